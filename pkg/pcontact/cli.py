"""
Command-line front end

    python -m pcontact construct-pn --n 3 --out gamma3.json
    python -m pcontact verify gamma3.json
    python -m pcontact hypersurface-cert --n 7 --d 5 --format table

Every command prints one certificate on stdout. Exit status 0 means a
positive verdict (verified / vanishes), 1 a negative one, 2 a usage or
input error; diagnostics go to stderr.
"""

import argparse
import json
import logging
import sys
from itertools import combinations
from typing import Any, Callable, Dict, Optional, Sequence, Tuple

from pcontact.atlas import (
    Section,
    chart_from_json,
    load_section,
    save_section,
    section_to_dict,
)
from pcontact.certificate import Certificate, emit
from pcontact.cohomology import (
    Verdict,
    bott_vanishing,
    euler_sequence_count,
    h0_projective,
    hypersurface_certificate,
    spin_root_k,
    zspace_basis,
)
from pcontact.config import EngineConfig
from pcontact.curvature import (
    PointFrame,
    contact_pairing_value,
    dual_positivity,
    kernel_report,
    load_frame,
    m_positive,
    parse_spectrum,
    scalar_curvature,
    scalar_curvature_report,
    spectrum_from_frame,
)
from pcontact.errors import PContactError, PoleError, RejectedInput
from pcontact.structures import (
    construct_pn,
    contact_power,
    contact_root_k,
    is_p_contact,
    is_s_symplectic,
    product_structure,
    product_top_identity,
    standard_contact_section,
    volume_check,
)
from pcontact.weights import WeightModel, sample_points

log = logging.getLogger("pcontact")

EXIT_POSITIVE, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2

Outcome = Tuple[Certificate, bool]


def configure_logging(verbose: bool):
    """One stderr handler, '[LEVEL] message'"""
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("[%(levelname)s] %(message)s"))
    log.handlers[:] = [handler]
    log.setLevel(logging.INFO if verbose else logging.WARNING)
    log.propagate = False


def _weight(name: str, s: Section) -> WeightModel:
    if name == "flat":
        return WeightModel.flat()
    return WeightModel.for_bundle(s.bundle)


def _chart(text: Optional[str]):
    if text is None:
        return None
    try:
        return chart_from_json(json.loads(text))
    except json.JSONDecodeError:
        raise RejectedInput(f"--chart must be JSON, e.g. 0 or [0, 1]; got {text!r}")


def _points(s: Section, config: EngineConfig):
    return sample_points(s.dim, config.points, config.seed)


def _write_section(s: Section, path: Optional[str]):
    if path:
        save_section(s, path)
        log.info(f"[OK] Section written to {path}")


# ============================================================================
# Commands
# ============================================================================

def cmd_construct_pn(args, config: EngineConfig) -> Outcome:
    s = construct_pn(args.n, config.workers)
    _write_section(s, args.out)
    report = is_p_contact(s, config.workers)
    body = {"report": report.to_dict(), "section": section_to_dict(s)}
    return Certificate("construct-pn", {"n": args.n}, report.verdict.value, body), report.holds


def cmd_verify(args, config: EngineConfig) -> Outcome:
    s = load_section(args.section)
    report = is_p_contact(s, config.workers)
    return Certificate("verify", {"section": args.section}, report.verdict.value, {"report": report.to_dict()}), report.holds


def cmd_symplectic_verify(args, config: EngineConfig) -> Outcome:
    s = load_section(args.section)
    report = is_s_symplectic(s, config.workers)
    return (
        Certificate("symplectic-verify", {"section": args.section}, report.verdict.value, {"report": report.to_dict()}),
        report.holds,
    )


def cmd_product(args, config: EngineConfig) -> Outcome:
    omega, gamma = load_section(args.omega), load_section(args.gamma)
    s = product_structure(omega, gamma, config.workers)
    _write_section(s, args.out)
    report = is_p_contact(s, config.workers)
    identity = product_top_identity(omega, gamma, s)
    body = {"report": report.to_dict(), "top_form_identity": identity}
    inputs = {"omega": args.omega, "gamma": args.gamma}
    return Certificate("product", inputs, report.verdict.value, body), report.holds and identity


def cmd_contact_power(args, config: EngineConfig) -> Outcome:
    if args.eta:
        eta = load_section(args.eta)
    else:
        eta = standard_contact_section(args.n if args.n is not None else 4 * args.l + 3)
    s = contact_power(eta, args.l, config.workers)
    _write_section(s, args.out)
    report = is_p_contact(s, config.workers)
    inputs = {"eta": args.eta, "n": args.n, "l": args.l}
    body = {"report": report.to_dict(), "bundle": s.bundle.describe()}
    return Certificate("contact-power", inputs, report.verdict.value, body), report.holds


def cmd_cohom_dim(args, config: EngineConfig) -> Outcome:
    z = zspace_basis(args.n, args.p, args.k)
    body: Dict[str, Any] = z.to_dict()
    if not args.basis:
        body.pop("basis")
    if args.p == 0:
        body["h0_binomial"] = h0_projective(args.n, args.k)
    if (args.p, args.k) == (1, 2):
        body["euler_sequence_count"] = euler_sequence_count(args.n)
    inputs = {"n": args.n, "p": args.p, "k": args.k}
    return Certificate("cohom-dim", inputs, f"dimension {z.dim}", body), True


def cmd_bott(args, config: EngineConfig) -> Outcome:
    step = bott_vanishing(args.p, args.q, args.k, args.N)
    verdict = Verdict.VANISHES if step.holds else Verdict.NOT_COVERED
    inputs = {"p": args.p, "q": args.q, "k": args.k, "N": args.N}
    return Certificate("bott", inputs, verdict.value, {"step": step.to_dict()}), step.holds


def cmd_hypersurface_cert(args, config: EngineConfig) -> Outcome:
    cert = hypersurface_certificate(args.n, args.d)
    inputs = {"n": args.n, "d": args.d}
    return (
        Certificate("hypersurface-cert", inputs, cert.verdict.value, {"certificate": cert.to_dict()}),
        cert.verdict == Verdict.VANISHES,
    )


def cmd_curvature(args, config: EngineConfig) -> Outcome:
    if args.fs is not None:
        n, k = args.fs
        points = sample_points(n, config.points, config.seed)
        report = scalar_curvature_report(n, k, points)
        verdict = "constant" if report.holds else "varying"
        return (
            Certificate("curvature", {"fs": [n, k]}, verdict, {"report": report.to_dict()}, seed=config.seed),
            report.holds,
        )

    frame = None
    if args.frame_file:
        frame = load_frame(args.frame_file)
        spec = spectrum_from_frame(frame)
    elif args.spectrum_file:
        with open(args.spectrum_file, "r", encoding="utf-8") as f:
            spec = parse_spectrum(f.read())
    elif args.spectrum:
        spec = parse_spectrum(args.spectrum)
    else:
        raise RejectedInput("give --spectrum, --spectrum-file, --frame-file or --fs")
    if frame is None:
        frame = PointFrame([0j] * spec.n, [[1 if i == j else 0 for j in range(spec.n)] for i in range(spec.n)],
                           [[float(spec.values[i]) if i == j else 0 for j in range(spec.n)] for i in range(spec.n)])

    m = args.m if args.m is not None else spec.n
    positive = m_positive(spec, m)
    body: Dict[str, Any] = {
        "spectrum": spec.to_dict(),
        "m": m,
        "m_positive": positive,
        "scalar_curvature": scalar_curvature(frame),
    }
    if args.p is not None:
        pairings = [
            {"J": list(J), "value": str(contact_pairing_value(spec, {J: 1}, args.p))}
            for J in combinations(range(spec.n), args.p)
        ]
        body["contact_pairings"] = pairings
        body["dual_positivity"] = dual_positivity(spec, args.p)
    inputs = {"spectrum": [str(v) for v in spec.values], "m": m, "p": args.p}
    if args.frame_file:
        inputs["frame_file"] = args.frame_file
    return Certificate("curvature", inputs, "m_positive" if positive else "not_m_positive", body), positive


def cmd_rank(args, config: EngineConfig) -> Outcome:
    s = load_section(args.section)
    chart = _chart(args.chart)
    weight = _weight(args.weight, s) if args.weight else None
    report = kernel_report(s, _points(s, config), chart, weight, config.kernel_rtol)
    if weight is None:
        verdict = "kernel_zero" if report.holds else "kernel_nonzero"
    else:
        verdict = "direct" if report.holds else "not_direct"
    inputs = {"section": args.section, "chart": args.chart, "weight": args.weight, "points": config.points}
    return Certificate("rank", inputs, verdict, {"report": report.to_dict()}, seed=config.seed), report.holds


def cmd_volume(args, config: EngineConfig) -> Outcome:
    s = load_section(args.section)
    weight = _weight(args.weight, s)
    report = volume_check(s, weight, _points(s, config), _chart(args.chart))
    verdict = "positive" if report.holds else "not_positive"
    inputs = {"section": args.section, "chart": args.chart, "weight": args.weight, "points": config.points}
    return Certificate("volume", inputs, verdict, {"report": report.to_dict()}, seed=config.seed), report.holds


def cmd_spin_root(args, config: EngineConfig) -> Outcome:
    k = spin_root_k(args.n)
    verdict = "none" if k is None else f"k = {k}"
    body = {"k": k, "contact_k": contact_root_k(args.n)}
    return Certificate("spin-root", {"n": args.n}, verdict, body), k is not None


# ============================================================================
# Parser
# ============================================================================

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--points", type=int, default=None, help="seeded sample points (default 100)")
    common.add_argument("--seed", type=int, default=None, help="sampling seed (default 0)")
    common.add_argument("--workers", type=int, default=None, help="threads for chart-pair checks")
    common.add_argument("--format", choices=["json", "table"], default=None, help="certificate format")
    common.add_argument("--verbose", action="store_true", help="log progress to stderr")

    parser = argparse.ArgumentParser(prog="pcontact", description="p-contact and s-symplectic structure engine")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler: Callable, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(handler=handler)
        return p

    p = add("construct-pn", cmd_construct_pn, "build the p-contact structure of P^n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", help="write the section file here")

    p = add("verify", cmd_verify, "check a section file for a p-contact structure")
    p.add_argument("section")

    p = add("symplectic-verify", cmd_symplectic_verify, "check a section file for an s-symplectic structure")
    p.add_argument("section")

    p = add("product", cmd_product, "product of an s-symplectic and a p-contact section")
    p.add_argument("omega")
    p.add_argument("gamma")
    p.add_argument("--out")

    p = add("contact-power", cmd_contact_power, "eta ^ (d eta)^l from a contact section")
    p.add_argument("eta", nargs="?", help="section file (default: standard contact form of P^n)")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--out")

    p = add("cohom-dim", cmd_cohom_dim, "dimension of H^(p,0)(P^n, O(k))")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--basis", action="store_true", help="include the kernel basis")

    p = add("bott", cmd_bott, "vanishing case for H^(p,q)(P^N, O(k))")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--N", type=int, required=True)

    p = add("hypersurface-cert", cmd_hypersurface_cert, "non-existence certificate for a hypersurface")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)

    p = add("curvature", cmd_curvature, "positivity of a spectrum, a metric frame or Fubini-Study scalar curvature")
    p.add_argument("--spectrum", help="eigenvalues, e.g. '-1,2,2'")
    p.add_argument("--spectrum-file")
    p.add_argument("--frame-file", help="metric rows then curvature rows at one point")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--p", type=int, default=None, help="form degree for the contact pairing")
    p.add_argument("--fs", type=int, nargs=2, metavar=("N", "K"), default=None)

    p = add("rank", cmd_rank, "pointwise contraction kernels of a section")
    p.add_argument("section")
    p.add_argument("--chart", default=None, help="JSON chart id, e.g. 0 or [0, 1]")
    p.add_argument("--weight", choices=["flat", "fs"], default=None, help="also intersect with ker D'_h")

    p = add("volume", cmd_volume, "volume density of a p-contact section")
    p.add_argument("section")
    p.add_argument("--chart", default=None)
    p.add_argument("--weight", choices=["flat", "fs"], default="fs")

    p = add("spin-root", cmd_spin_root, "square root of the anticanonical bundle of P^n")
    p.add_argument("--n", type=int, required=True)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_POSITIVE

    configure_logging(args.verbose)
    config = EngineConfig.from_env().with_overrides(
        points=args.points, seed=args.seed, workers=args.workers, output_format=args.format,
    )

    try:
        cert, positive = args.handler(args, config)
    except (RejectedInput, PoleError, OSError) as e:
        log.error(str(e))
        return EXIT_USAGE
    except PContactError as e:
        log.error(f"internal check failed: {e}")
        return EXIT_USAGE

    sys.stdout.write(emit(cert, config.output_format))
    return EXIT_POSITIVE if positive else EXIT_NEGATIVE


if __name__ == "__main__":
    sys.exit(main())
