"""
Command-line front end. Every command writes one report (JSON unless the output
path ends in .csv) and exits 0 on pass, 1 when a check fails and 2 on usage or
validation errors.
"""
import argparse
import json
import logging
import math
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence

from torus_pmra import __version__
from torus_pmra.analysis.checks import (
    check_refinement,
    check_unit_lattice_norm,
    compare_scaling_function,
    xi_membership,
)
from torus_pmra.analysis.grid import TorusGrid
from torus_pmra.analysis.sections import (
    ClosedFormHaar,
    CosineBump,
    Section,
    TensorProduct,
    TrigPolynomial,
)
from torus_pmra.config import ConfigManager, RunConfig, resolve_config
from torus_pmra.exceptions import TorusPmraError, ValidationError
from torus_pmra.filters.bank import (
    haar_filter_bank,
    tensor_filter,
    verify_filter_bank,
    verify_tensor_filter,
)
from torus_pmra.filters.trigpoly import MultiTrigPoly
from torus_pmra.frames.frame import FrameSet, generate_frame
from torus_pmra.frames.generators import band_limited_generators, dyadic_dilation
from torus_pmra.frames.verification import (
    certify_free_rank,
    density_profile,
    verify_frame,
)
from torus_pmra.ktheory.classes import (
    KClass,
    ModuleDescriptor,
    class_of_module,
    embed_class,
)
from torus_pmra.ktheory.pushforward import dilate_class, level_report, wavelet_class
from torus_pmra.lattice.cosets import coset_table
from torus_pmra.lattice.dilation import (
    DilationSpec,
    diagonal_dilation,
    validate_dilation,
)
from torus_pmra.lattice.unimodular import cofactor_triple
from torus_pmra.reports import REPORT_SCHEMA_VERSION
from torus_pmra.serializers import SerializerRegistry, canonical_dumps
from torus_pmra.serializers import schemas

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

# the cascade error at depth J is about |d|^-J, which 1e-8 does not admit at J = 20
PHI_TOL = 1e-6

DEFAULT_FRAME_LEVEL = 2
DEFAULT_GRAM_LEVEL = 1
DEFAULT_K0_LEVELS = 3
DENSITY_BUMP = CosineBump(radius=4.0, power=8)
REFINE_WINDOW = (-4.0, 4.0)
FRAME_COMMANDS = ("frame", "gram", "density")
CONFIG_FLAGS = ("grid", "radius", "depth", "tol", "level_cap", "seed", "workers", "out")

FRAME_SUMMARY = schemas.FrameSetSchema(only=("spec", "depth", "element_count"))

Handler = Callable[[argparse.Namespace, RunConfig], int]


def _json_matrix(text: str) -> List[List[int]]:
    try:
        value = json.loads(text)
    except json.JSONDecodeError as e:
        raise argparse.ArgumentTypeError(f"not a JSON matrix: {e}")
    if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
        raise argparse.ArgumentTypeError(f"expected a list of rows, got {text}")
    return value


def _shared_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--grid", type=int, help="grid resolution N per axis")
    parent.add_argument("--radius", type=int, help="lattice truncation radius R")
    parent.add_argument("--depth", type=int, help="cascade product depth J")
    parent.add_argument("--tol", type=float, help="pass tolerance")
    parent.add_argument("--level-cap", type=int, dest="level_cap")
    parent.add_argument("--seed", type=int, help="seed of the test corpus")
    parent.add_argument("--workers", type=int, help="threads for lattice sums")
    parent.add_argument("--out", help="report path; .csv selects CSV output")
    parent.add_argument("--config", help="JSON config file")
    parent.add_argument("--verbose", action="store_true", help="debug logging")
    return parent


def _module_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--q", type=int, required=True, help="rank of V_0")
    parser.add_argument("--twists", type=int, nargs="*", default=[])
    parser.add_argument("--module-conjugator", type=_json_matrix, dest="module_b")


def build_parser() -> argparse.ArgumentParser:
    shared = _shared_flags()
    parser = argparse.ArgumentParser(
        prog="torus-pmra",
        description="Projective multiresolution analyses over n-tori",
    )
    parser.add_argument("--version", action="version", version=__version__)
    commands = parser.add_subparsers(dest="command", required=True)

    cosets = commands.add_parser("cosets", parents=[shared], help="coset tables")
    cosets.add_argument("--matrix", type=_json_matrix, required=True)
    cosets.add_argument("--conjugator", type=_json_matrix)
    cosets.add_argument("--level", type=int, required=True)
    cosets.set_defaults(handler=cmd_cosets)

    k0 = commands.add_parser("k0", help="K_0 computations")
    k0_commands = k0.add_subparsers(dest="k0_command", required=True)
    k_class = k0_commands.add_parser("class", parents=[shared])
    _module_flags(k_class)
    k_class.set_defaults(handler=cmd_k0_class)
    for name, handler in (("dilate", cmd_k0_dilate), ("levels", cmd_k0_levels)):
        sub = k0_commands.add_parser(name, parents=[shared])
        sub.add_argument("--matrix", type=_json_matrix, required=True)
        sub.add_argument("--conjugator", type=_json_matrix)
        sub.add_argument("--level", type=int, help="top level of the report")
        _module_flags(sub)
        sub.set_defaults(handler=handler)
    embed = k0_commands.add_parser("sl3-embed", parents=[shared])
    for name in ("q", "c1", "c2", "c3"):
        embed.add_argument(name, type=int)
    embed.set_defaults(handler=cmd_k0_embed)

    verify = commands.add_parser("verify", help="numerical verification")
    verify_commands = verify.add_subparsers(dest="verify_command", required=True)
    for name, handler in VERIFY_HANDLERS.items():
        sub = verify_commands.add_parser(name, parents=[shared])
        sub.add_argument("--d", type=int, default=2, help="dilation factor")
        sub.add_argument("--n", type=int, default=1, help="torus dimension")
        sub.add_argument(
            "--section",
            choices=("haar", "constant", "bandlimited"),
            default="bandlimited" if name in FRAME_COMMANDS else "haar",
        )
        sub.add_argument("--level", type=int, help="frame level or depth")
        sub.add_argument("--q", type=int, default=1, help="quasi-period")
        sub.set_defaults(handler=handler)
    return parser


def _flags(args: argparse.Namespace) -> Dict[str, Any]:
    return {key: getattr(args, key, None) for key in CONFIG_FLAGS}


def _emit(value: Any, config: RunConfig) -> None:
    registry = SerializerRegistry()
    if config.out:
        registry.write(value, config.out)
    else:
        sys.stdout.write(registry.serialize(value) + "\n")


def _outcome(passed: bool) -> int:
    return EXIT_PASS if passed else EXIT_FAIL


def _document(kind: str, **body: Any) -> Dict[str, Any]:
    return {"schema": REPORT_SCHEMA_VERSION, "kind": kind, **body}


def _spec(args: argparse.Namespace) -> DilationSpec:
    return validate_dilation(args.matrix, getattr(args, "conjugator", None))


def _module(args: argparse.Namespace) -> ModuleDescriptor:
    return ModuleDescriptor(
        q=args.q, twists=tuple(args.twists), conjugator=args.module_b
    )


def cmd_cosets(args: argparse.Namespace, config: RunConfig) -> int:
    table = coset_table(_spec(args), args.level, config.level_cap)
    _emit(table, config)
    return EXIT_PASS


def cmd_k0_class(args: argparse.Namespace, config: RunConfig) -> int:
    m = _module(args)
    _emit(
        _document(
            "k0_class", module=schemas.dump(m), k_class=schemas.dump(class_of_module(m))
        ),
        config,
    )
    return EXIT_PASS


def cmd_k0_dilate(args: argparse.Namespace, config: RunConfig) -> int:
    spec, m = _spec(args), _module(args)
    upper = dilate_class(spec, m)
    _emit(
        _document(
            "k0_dilate",
            spec=schemas.dump(spec),
            module=schemas.dump(m),
            dilated=schemas.dump(upper),
            dilated_class=schemas.dump(class_of_module(upper)),
            wavelet=schemas.WaveletClassSchema().dump(wavelet_class(spec, m, 0)),
        ),
        config,
    )
    return EXIT_PASS


def cmd_k0_levels(args: argparse.Namespace, config: RunConfig) -> int:
    level = DEFAULT_K0_LEVELS if args.level is None else args.level
    _emit(level_report(_spec(args), _module(args), level), config)
    return EXIT_PASS


def cmd_k0_embed(args: argparse.Namespace, config: RunConfig) -> int:
    """gcd reduction, SL(3, Z) completion and the class round trip."""
    m = embed_class(args.q, args.c1, args.c2, args.c3)
    expected = KClass.from_coeffs(
        3, {(): args.q, (1, 2): args.c1, (1, 3): args.c2, (2, 3): args.c3}
    )
    actual = class_of_module(m)
    cofactors_ok = True
    if m.conjugator is not None:
        a = math.gcd(math.gcd(args.c1, args.c2), args.c3)
        reduced = (args.c1 // a, args.c2 // a, args.c3 // a)
        cofactors_ok = cofactor_triple(m.conjugator) == reduced
    passed = actual == expected and cofactors_ok
    _emit(
        _document(
            "k0_sl3_embed",
            module=schemas.dump(m),
            k_class=schemas.dump(actual),
            expected=schemas.dump(expected),
            cofactors_verified=cofactors_ok,
            passed=passed,
        ),
        config,
    )
    return _outcome(passed)


def _tensor(factor: Section, n: int) -> Section:
    return factor if n == 1 else TensorProduct((factor,) * n)


def _section(args: argparse.Namespace) -> Section:
    if args.section == "haar":
        return _tensor(ClosedFormHaar(args.d), args.n)
    if args.section == "constant":
        return TrigPolynomial(MultiTrigPoly.constant(args.n, 1.0))
    return band_limited_generators(args.n).scaling[0]


def _band_limited_frame(
    args: argparse.Namespace, depth: int, config: RunConfig
) -> FrameSet:
    if args.section != "bandlimited" or args.d != 2:
        raise ValidationError(
            "Frames are built from band-limited generators with d = 2"
        )
    generators = band_limited_generators(args.n)
    return generate_frame(
        dyadic_dilation(args.n),
        generators.scaling,
        generators.wavelets,
        depth,
        config.level_cap,
    )


def _grid(args: argparse.Namespace, config: RunConfig) -> TorusGrid:
    return TorusGrid(args.n, config.grid_for(args.n))


def cmd_verify_filters(args: argparse.Namespace, config: RunConfig) -> int:
    bank = haar_filter_bank(args.d)
    points = config.grid_for(args.n)
    if args.n == 1:
        report: Any = verify_filter_bank(bank, points, config.tol)
    else:
        banks = [bank] * args.n
        report = verify_tensor_filter(tensor_filter(banks), banks, points, config.tol)
    _emit(report, config)
    return _outcome(report.passed)


def cmd_verify_phi(args: argparse.Namespace, config: RunConfig) -> int:
    tol = PHI_TOL if args.tol is None else args.tol
    report = compare_scaling_function(args.d, config.depth, tol=tol)
    _emit(report, config)
    return _outcome(report.passed)


def cmd_verify_xi(args: argparse.Namespace, config: RunConfig) -> int:
    report = xi_membership(
        _section(args), _grid(args, config), config.radius, config.tol, config.workers
    )
    _emit(report, config)
    return _outcome(report.passed)


def cmd_verify_refine(args: argparse.Namespace, config: RunConfig) -> int:
    if args.section != "haar":
        raise ValidationError("Refinement masks are available for Haar sections only")
    bank = haar_filter_bank(args.d)
    mask = TrigPolynomial(tensor_filter([bank] * args.n))
    report = check_refinement(
        _section(args),
        mask,
        diagonal_dilation(*([args.d] * args.n)),
        _grid(args, config),
        config.tol,
        window=REFINE_WINDOW,
    )
    _emit(report, config)
    return _outcome(report.passed)


def cmd_verify_unit_norm(args: argparse.Namespace, config: RunConfig) -> int:
    report = check_unit_lattice_norm(
        _section(args),
        args.q,
        _grid(args, config),
        config.radius,
        config.tol,
        config.workers,
    )
    _emit(report, config)
    return _outcome(report.passed)


def cmd_verify_frame(args: argparse.Namespace, config: RunConfig) -> int:
    depth = DEFAULT_FRAME_LEVEL if args.level is None else args.level
    fs = _band_limited_frame(args, depth, config)
    grid = _grid(args, config)
    reports = [
        verify_frame(
            fs,
            level,
            grid,
            config.radius,
            config.tol,
            config.seed,
            workers=config.workers,
        )
        for level in range(depth + 1)
    ]
    passed = all(r.passed for r in reports)
    _emit(
        _document(
            "frame_levels",
            frame=FRAME_SUMMARY.dump(fs),
            levels=[schemas.dump(r) for r in reports],
            passed=passed,
        ),
        config,
    )
    return _outcome(passed)


def cmd_verify_gram(args: argparse.Namespace, config: RunConfig) -> int:
    level = DEFAULT_GRAM_LEVEL if args.level is None else args.level
    fs = _band_limited_frame(args, level, config)
    report = certify_free_rank(
        fs, level, _grid(args, config), config.radius, config.tol, config.workers
    )
    _emit(report, config)
    return _outcome(report.passed)


def cmd_verify_density(args: argparse.Namespace, config: RunConfig) -> int:
    depth = DEFAULT_FRAME_LEVEL + 1 if args.level is None else args.level
    fs = _band_limited_frame(args, depth, config)
    zeta = CosineBump(DENSITY_BUMP.radius, DENSITY_BUMP.power, dimension=args.n)
    report = density_profile(
        fs, zeta, _grid(args, config), config.radius, workers=config.workers
    )
    _emit(report, config)
    return _outcome(report.passed)


VERIFY_HANDLERS: Dict[str, Handler] = {
    "filters": cmd_verify_filters,
    "phi": cmd_verify_phi,
    "xi": cmd_verify_xi,
    "refine": cmd_verify_refine,
    "unit-norm": cmd_verify_unit_norm,
    "frame": cmd_verify_frame,
    "gram": cmd_verify_gram,
    "density": cmd_verify_density,
}


def _error(e: Exception) -> None:
    payload = {
        "schema": REPORT_SCHEMA_VERSION,
        "error": {"type": type(e).__name__, "message": str(e)},
    }
    sys.stdout.write(canonical_dumps(payload) + "\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_PASS

    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    try:
        config = resolve_config(_flags(args), args.config)
        ConfigManager().set_default_config(config)
        return args.handler(args, config)
    except ValidationError as e:
        logger.error("%s", e)
        _error(e)
        return EXIT_USAGE
    except TorusPmraError as e:
        logger.exception("Command failed")
        _error(e)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
