"""Batch command line for matrix Gaussian computations.

Exit codes: 0 success, 1 usage error, 2 unreadable or malformed input,
3 numeric failure (not positive-definite, dimension mismatch, ...).

``sample`` draws from ``numpy.random.Generator(numpy.random.PCG64(seed))``
using ``standard_normal``; that generator is part of the output contract.
"""

import argparse
import sys

import numpy as np

from . import __version__
from .covrepr import cross_cov_from_blocks, cross_cov_from_joint
from .documents import (
    DocumentError,
    dump_document,
    dump_fields,
    load_distribution,
    load_document,
    to_kron_document,
)
from .errors import AsymmetryError, DimensionError, DomainError, MatGaussError
from .errors import NotPositiveDefiniteError
from .matnorm import (
    MatrixNormal,
    check_diag_representable,
    nearest_kron_covariance,
    param_count_ratio,
)
from .mgauss import affine_map, conditional, entropy, fit_mle, log_pdf, marginal, sample
from .quadform import expected_quad_form, scalar_quad_form

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3

_CONTRACTS = [
    (NotPositiveDefiniteError, "not-positive-definite"),
    (DimensionError, "dimension-mismatch"),
    (AsymmetryError, "swap-symmetry"),
    (DomainError, "domain"),
]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def format_scalar(x):
    return format(float(x), ".12g")


def _cmd_sample(args):
    d = load_distribution(args.dist)
    rng = np.random.Generator(np.random.PCG64(args.seed))
    return dump_document(sample(d, rng, size=args.count))


def _cmd_logpdf(args):
    d = load_distribution(args.dist)
    x = load_document(args.x, expect=("matrix",))
    return format_scalar(log_pdf(d, x)) + "\n"


def _cmd_entropy(args):
    return format_scalar(entropy(load_distribution(args.dist))) + "\n"


def _cmd_affine(args):
    d = load_distribution(args.dist)
    b = load_document(args.b, expect=("matrix",))
    c = load_document(args.c, expect=("matrix",)) if args.c else None
    return dump_document(affine_map(d, b, c))


def _cmd_marginal(args):
    j = load_document(args.joint, expect=("joint_matrix_gaussian",))
    return dump_document(marginal(j, args.which))


def _cmd_conditional(args):
    j = load_document(args.joint, expect=("joint_matrix_gaussian",))
    obs = load_document(args.observed, expect=("matrix",))
    return dump_document(conditional(j, obs))


def _cmd_quadform(args):
    c = load_document(args.c, expect=("matrix",))
    if (args.joint is None) == (args.dist is None):
        raise _UsageError("quadform: give exactly one of --joint or --dist")
    if args.joint is not None:
        j = load_document(args.joint, expect=("joint_matrix_gaussian",))
        eqf = expected_quad_form(cross_cov_from_joint(j), j.mean_a, j.mean_b, c)
    else:
        d = load_distribution(args.dist)
        s_aa = cross_cov_from_blocks(d.sigma.entries, d.m, d.n, d.n)
        eqf = expected_quad_form(s_aa, d.mean, d.mean, c)
    if (args.x is None) != (args.u is None):
        raise _UsageError("quadform: --x and --u must be given together")
    if args.x is not None:
        x = load_document(args.x, expect=("matrix",))
        u = load_document(args.u, expect=("matrix",))
        return format_scalar(scalar_quad_form(eqf, x, u)) + "\n"
    return dump_document(eqf)


def _cmd_convert(args):
    d = load_distribution(args.dist)
    if args.to == "s":
        return dump_document(to_kron_document(d))
    return dump_document(d)


def _cmd_fit(args):
    samples = load_document(args.samples, expect=("samples",))
    return dump_document(fit_mle(samples, jitter=args.jitter))


def _cmd_check_kron(args):
    var = load_document(args.variances, expect=("matrix",))
    res = check_diag_representable(var, rel_tol=args.rel_tol)
    lines = [f"representable: {'true' if res.representable else 'false'}"]
    if res.representable:
        lines.append("u: " + " ".join(format_scalar(x) for x in res.u_diag))
        lines.append("v: " + " ".join(format_scalar(x) for x in res.v_diag))
    return "\n".join(lines) + "\n"


def _cmd_nearest_kron(args):
    d = load_distribution(args.dist)
    res = nearest_kron_covariance(d.sigma, d.m, d.n, iters=args.iters)
    extra = {
        "residual": res.residual,
        "abs_residual": res.abs_residual,
        "positive_definite": res.positive_definite,
    }
    if res.positive_definite:
        return dump_document(MatrixNormal(d.mean, res.u, res.v), extra)
    # An indefinite pair is not a valid matrix_normal document.
    fields = [
        ("kind", "kron_factors"),
        ("rows", d.m),
        ("cols", d.n),
        ("mean", d.mean),
        ("u", res.u),
        ("v", res.v),
    ]
    return dump_fields(fields + list(extra.items()))


def _cmd_params(args):
    structured, full, ratio = param_count_ratio(args.n, args.p)
    return f"structured: {structured}\nfull: {full}\nratio: {format_scalar(ratio)}\n"


def _seed(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("seed must be an unsigned integer")
    return value


def _positive(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid count {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser():
    parser = _Parser(prog="matgauss", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--out", help="output path (default: standard output)")
        p.set_defaults(func=func)
        return p

    p = add("sample", _cmd_sample, "draw reproducible samples")
    p.add_argument("--dist", required=True)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--count", type=_positive, default=1)

    p = add("logpdf", _cmd_logpdf, "log-density at a matrix")
    p.add_argument("--dist", required=True)
    p.add_argument("--x", required=True, help="matrix document")

    p = add("entropy", _cmd_entropy, "differential entropy in nats")
    p.add_argument("--dist", required=True)

    p = add("affine", _cmd_affine, "law of B A + C")
    p.add_argument("--dist", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--c")

    p = add("marginal", _cmd_marginal, "marginal of one block of a joint")
    p.add_argument("--joint", required=True)
    p.add_argument("--which", choices=("a", "b"), required=True)

    p = add("conditional", _cmd_conditional, "law of A given B")
    p.add_argument("--joint", required=True)
    p.add_argument("--observed", required=True)

    p = add("quadform", _cmd_quadform, "expected E[A^T C B] or x^T E[A^T C B] u")
    p.add_argument("--joint")
    p.add_argument("--dist", help="single distribution; uses B = A")
    p.add_argument("--c", required=True)
    p.add_argument("--x")
    p.add_argument("--u")

    p = add("convert", _cmd_convert, "switch between vec and Kronecker covariance")
    p.add_argument("--dist", required=True)
    p.add_argument("--to", choices=("s", "sigma"), required=True)

    p = add("fit", _cmd_fit, "maximum-likelihood fit to samples")
    p.add_argument("--samples", required=True)
    p.add_argument("--jitter", type=float, default=0.0)

    p = add("check-kron", _cmd_check_kron, "can diagonal variances be a matrix normal?")
    p.add_argument("--variances", required=True)
    p.add_argument("--rel-tol", type=float, default=1e-9)

    p = add("nearest-kron", _cmd_nearest_kron, "nearest V ⊗ U covariance")
    p.add_argument("--dist", required=True)
    p.add_argument("--iters", type=_positive, default=100)

    p = add("params", _cmd_params, "covariance parameter counts")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--p", type=_positive, required=True)
    return parser


def _contract(exc):
    for cls, name in _CONTRACTS:
        if isinstance(exc, cls):
            return name
    return "numeric"


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        text = args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DocumentError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (MatGaussError, ValueError, np.linalg.LinAlgError) as exc:
        print(f"numeric error [{_contract(exc)}]: {exc}", file=sys.stderr)
        return EXIT_NUMERIC

    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"usage error: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
