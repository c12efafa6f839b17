"""Command-line front end: bounds as JSON, region boundaries as CSV.

Every numeric in the output serializes in round-trip form, so piping a
result back into a test compares bit-for-bit with the library call.
Conditional results carry a status field (open / closed / not-applicable);
a failed applicability condition is a domain answer, not an error exit.
Parameter problems exit 2, numerical failures exit 3.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .applications import (
    CoulombSpec,
    DiracSpec,
    ManifoldSpec,
    TwoChannelSpec,
    dirac2d_cp,
    dirac2d_envelope,
    dirac3d_coulomb,
    envelope_im_at_re,
    manifold_relbounds,
    two_channel_bound,
)
from .blocks import (
    BlockMinima,
    DiagBounds,
    OffDiagBounds,
    even_lowerbound,
    even_lowerbound_quadratic,
    odd_symmetric_gap,
    offdiag_gap,
)
from .enclosures import (
    Gap,
    GKCover,
    IsolatedEigSpec,
    QuadBound,
    hyperbola_excluded,
    isolated_eigenvalue_strip,
    perturbed_strip,
    resolvent_bound_offreal,
    resolvent_bound_strip,
    resolvent_bound_strip_refined,
    subordination_family,
    symmetric_gap_strip,
)
from .enclosures import gk_sector_cover as _gk_cover
from .errors import ConditionNotApplicable, NumericalFailure
from .gap_sequences import (
    BandProfile,
    ConstModel,
    GapSequence,
    GrowthTerm,
    PerGapConstants,
    TailModel,
    kappa_s,
    necessary_growth_check,
    powerlaw_example,
    ratio_criterion,
)
from .matrix_lab import VerifyOptions, run_suite
from .regions import (
    Segment,
    coulomb_boundary,
    envelope_boundary,
    hyperbola_boundary,
    sector_boundary,
    segments_to_csv,
    strip_boundary,
)

__all__ = ["main"]


def _floats(value) -> tuple[float, ...]:
    if isinstance(value, (list, tuple)):
        return tuple(float(v) for v in value)
    parts = [p for p in str(value).replace(";", ",").split(",") if p.strip()]
    return tuple(float(p) for p in parts)


def _merge_json(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    src = getattr(args, "json", None)
    if not src:
        return
    try:
        text = sys.stdin.read() if src == "-" else open(src, "r", encoding="utf-8").read()
        doc = json.loads(text)
    except OSError as exc:
        parser.error(f"cannot read --json input: {exc}")
    except json.JSONDecodeError as exc:
        parser.error(f"--json input is not valid JSON: {exc}")
    if not isinstance(doc, dict):
        parser.error("--json input must be a JSON object")
    for key, value in doc.items():
        dest = key.replace("-", "_")
        if not hasattr(args, dest):
            parser.error(f"unknown parameter {key!r} in --json input")
        if getattr(args, dest) is None:
            setattr(args, dest, value)


def _need(parser: argparse.ArgumentParser, args: argparse.Namespace, *names: str) -> None:
    missing = [n for n in names if getattr(args, n.replace("-", "_")) is None]
    if missing:
        parser.error("missing required parameters: " + ", ".join("--" + n for n in missing))


def _write_csv(path: str, text: str):
    if path == "-":
        sys.stdout.write(text)
        return None
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return path


# ---------------------------------------------------------------------------
# handlers


def _cmd_enclose(args, parser):
    _need(parser, args, "a", "b")
    q = QuadBound(args.a, args.b)
    if q.b >= 1.0:
        raise ConditionNotApplicable("b >= 1 excludes nothing: the enclosure is the whole plane")
    denom = math.sqrt(1.0 - q.b * q.b)
    doc = {
        "status": "open",
        "a": q.a,
        "b": q.b,
        "intercept": q.a / denom,
        "slope": q.b / denom,
    }
    if args.re is not None and args.im is not None:
        doc["excluded"] = hyperbola_excluded(q, complex(args.re, args.im))
    return doc


def _cmd_strip(args, parser):
    _need(parser, args, "a", "b", "alpha", "beta")
    res = perturbed_strip(QuadBound(args.a, args.b), Gap(args.alpha, args.beta))
    return {
        "status": "open" if res.open else "closed",
        "lo": res.lo,
        "hi": res.hi,
        "open": res.open,
    }


def _cmd_resolvent(args, parser):
    _need(parser, args, "a", "b", "re", "im")
    if (args.alpha is None) != (args.beta is None):
        parser.error("--alpha and --beta must be given together")
    q = QuadBound(args.a, args.b)
    z = complex(args.re, args.im)
    if args.alpha is None:
        return {"status": "open", "bound": resolvent_bound_offreal(q, z)}
    gap = Gap(args.alpha, args.beta)
    return {
        "status": "open",
        "plain": resolvent_bound_strip(q, gap, z),
        "refined": resolvent_bound_strip_refined(q, gap, z),
    }


def _cmd_symmetric_gap(args, parser):
    _need(parser, args, "a", "b", "beta")
    res = symmetric_gap_strip(QuadBound(args.a, args.b), args.beta)
    doc = {
        "status": "open" if res.strip.open else "closed",
        "lo": res.strip.lo,
        "hi": res.strip.hi,
        "beta_pert": res.beta_pert,
        "shift": res.shift,
    }
    if args.re is not None and args.im is not None:
        doc["bound"] = res.resolvent_bound(complex(args.re, args.im))
    return doc


def _cmd_gk_cover(args, parser):
    _need(parser, args, "c", "p", "eps")
    b = args.b if args.b is not None else 0.5 * args.eps / math.sqrt(2.0 + args.eps**2)
    a_val = subordination_family(args.c, args.p)(b)
    cover = _gk_cover(lambda _eps: QuadBound(a_val, b), args.eps)
    return {
        "status": "ok",
        "r_eps": cover.r_eps,
        "half_angle": cover.half_angle,
        "a_eps": a_val,
        "b_eps": float(b),
    }


def _cmd_eig_strip(args, parser):
    _need(parser, args, "a", "b", "lam", "alpha", "beta", "mult")
    spec = IsolatedEigSpec(args.lam, args.alpha, args.beta, int(args.mult))
    strip = isolated_eigenvalue_strip(QuadBound(args.a, args.b), spec)
    return {"status": "open", "lo": strip.lo, "hi": strip.hi, "count": strip.count}


def _band_data(args, parser):
    """TailModel or GapSequence from the band-structure flags."""
    if args.alphas is not None or args.betas is not None:
        _need(parser, args, "alphas", "betas")
        seq = GapSequence(_floats(args.alphas), _floats(args.betas))
        if args.window is not None:
            return TailModel("finite-data", seq=seq, window=int(args.window))
        return seq
    _need(parser, args, "model")
    if args.model == "power-log":
        _need(parser, args, "p1", "q1")
        return TailModel(
            "power-log",
            p1=args.p1,
            p2=args.p2,
            q1=args.q1,
            q2=args.q2,
            length_prefactor=args.length_prefactor if args.length_prefactor is not None else 1.0,
            width_prefactor=args.width_prefactor if args.width_prefactor is not None else 1.0,
        )
    if args.model == "geometric":
        _need(parser, args, "ratio", "band_ratio")
        return TailModel(
            "geometric",
            ratio=args.ratio,
            band_ratio=args.band_ratio,
            alpha_scale=args.alpha_scale if args.alpha_scale is not None else 1.0,
        )
    parser.error(f"unknown band model {args.model!r}")


def _cmd_gaps(args, parser):
    _need(parser, args, "delta_a")
    res = ratio_criterion(_band_data(args, parser), args.delta_a)
    return {
        "status": "ok",
        "verdict": res.verdict.value,
        "liminf": res.liminf,
        "limsup": res.limsup,
        "threshold": res.threshold,
        "exact": res.exact,
    }


def _const_terms(args) -> ConstModel | None:
    if args.a_coeff is None and args.b_coeff is None:
        return None
    a_term = GrowthTerm(
        args.a_coeff or 0.0, 1.0, args.a_power or 0.0, args.a_log_power or 0.0
    )
    b_term = GrowthTerm(
        args.b_coeff or 0.0, 1.0, args.b_power or 0.0, args.b_log_power or 0.0
    )
    return ConstModel(a_term, b_term)


def _cmd_kappa(args, parser):
    if args.lengths is not None:
        _need(parser, args, "a_seq", "b_seq")
        widths = _floats(args.widths) if args.widths is not None else ()
        bands = BandProfile(_floats(args.lengths), widths)
        consts = PerGapConstants(_floats(args.a_seq), _floats(args.b_seq))
        return {"status": "ok", "kappa": kappa_s(bands, consts)}
    data = _band_data(args, parser)
    consts = _const_terms(args)
    if not isinstance(data, TailModel) or consts is None:
        parser.error("analytic kappa needs a power-log band model and constant terms")
    return {"status": "ok", "kappa": kappa_s(data, consts)}


def _cmd_growth_check(args, parser):
    _need(parser, args, "delta_a")
    data = _band_data(args, parser)
    consts: ConstModel | PerGapConstants | None = _const_terms(args)
    if consts is None and args.a_seq is not None:
        _need(parser, args, "b_seq")
        consts = PerGapConstants(_floats(args.a_seq), _floats(args.b_seq))
    diag = necessary_growth_check(data, args.delta_a, consts)
    return {
        "status": "ok",
        "ok": diag.ok,
        "failed_condition": diag.failed_condition,
        "details": diag.details,
    }


def _cmd_powerlaw(args, parser):
    _need(parser, args, "p1", "q1")
    model = TailModel(
        "power-log",
        p1=args.p1,
        p2=args.p2,
        q1=args.q1,
        q2=args.q2,
        length_prefactor=args.length_prefactor if args.length_prefactor is not None else 1.0,
        width_prefactor=args.width_prefactor if args.width_prefactor is not None else 1.0,
    )
    a_term = GrowthTerm(args.a_coeff or 0.0, 1.0, args.a_power or 0.0, args.a_log_power or 0.0)
    b_term = GrowthTerm(args.b_coeff or 0.0, 1.0, args.b_power or 0.0, args.b_log_power or 0.0)
    res = powerlaw_example(model, a_term, b_term)
    return {"status": "ok", "kappa_bound": res.kappa_bound, "eps0": res.eps0}


def _cmd_structured(args, parser):
    if args.shape == "offdiag":
        _need(parser, args, "a12", "b12", "a21", "b21", "alpha", "beta")
        res = offdiag_gap(
            OffDiagBounds(args.a12, args.b12, args.a21, args.b21),
            Gap(args.alpha, args.beta),
        )
        return {"status": "open", "delta": res.delta, "lo": res.strip.lo, "hi": res.strip.hi}
    if args.shape == "even":
        _need(parser, args, "a12", "b12", "a21", "b21", "beta1", "beta2")
        bounds = OffDiagBounds(args.a12, args.b12, args.a21, args.b21)
        minima = BlockMinima(args.beta1, args.beta2)
        return {
            "status": "ok",
            "lower_bound": even_lowerbound(bounds, minima),
            "lower_bound_quadratic": even_lowerbound_quadratic(bounds, minima),
        }
    if args.shape == "odd":
        _need(parser, args, "a11", "b11", "a22", "b22", "beta")
        beta_plus = odd_symmetric_gap(
            DiagBounds(args.a11, args.b11, args.a22, args.b22), args.beta
        )
        return {"status": "open", "beta_plus": beta_plus}
    parser.error(f"unknown shape {args.shape!r}")


def _cmd_dirac_envelope(args, parser):
    _need(parser, args, "p", "vnorm", "samples")
    spec = DiracSpec(args.vnorm, args.p)
    curve = dirac2d_envelope(spec, int(args.samples), b_min=args.b_min, b_max=args.b_max)
    doc = {
        "status": "ok",
        "p": spec.p,
        "vnorm": spec.v_norm,
        "cp": dirac2d_cp(spec),
        "asymptote_coeff": curve.asymptote_coeff,
        "asymptote_exponent": curve.asymptote_exponent,
        "clipped": curve.clipped,
    }
    if args.re is not None:
        doc["im_at_re"] = envelope_im_at_re(spec, args.re)
    if args.csv is not None:
        text = segments_to_csv((Segment(f"p={spec.p:g}", curve.re, curve.im),))
        if _write_csv(args.csv, text) is None:
            return None
        doc["csv"] = args.csv
        doc["rows"] = len(curve.re)
    else:
        doc["points"] = [[b, re, im] for b, re, im in zip(curve.b, curve.re, curve.im)]
    return doc


def _cmd_coulomb(args, parser):
    _need(parser, args, "c1", "c2", "mass")
    region = dirac3d_coulomb(CoulombSpec(args.c1, args.c2, args.mass))
    doc = {
        "status": "open" if region.gap.strip.open else "closed",
        "halfwidth": region.halfwidth,
        "lo": region.gap.strip.lo,
        "hi": region.gap.strip.hi,
        "bisectorial": region.bisectorial,
    }
    if args.re is not None and args.im is not None:
        doc["certified_free"] = region.certified_free(complex(args.re, args.im))
    return doc


def _cmd_manifold(args, parser):
    _need(parser, args, "c", "p", "case", "n", "eps_geom")
    spec = ManifoldSpec(args.c, args.p, int(args.case), args.eps_geom)
    mb = manifold_relbounds(
        spec,
        int(args.n),
        length_prefactor=args.length_prefactor if args.length_prefactor is not None else 1.0,
        width_prefactor=args.width_prefactor if args.width_prefactor is not None else 1.0,
    )
    doc = {
        "status": "ok",
        "a_n": mb.pointwise.a,
        "b_n": mb.pointwise.b,
        "slope": mb.a_model.coeff,
        "band": {
            "p1": mb.band_model.p1,
            "p2": mb.band_model.p2,
            "q1": mb.band_model.q1,
            "q2": mb.band_model.q2,
        },
    }
    if args.pipeline:
        res = powerlaw_example(mb.band_model, mb.a_model, mb.b_model)
        doc["kappa_bound"] = res.kappa_bound
        doc["eps0"] = res.eps0
    return doc


def _cmd_two_channel(args, parser):
    _need(parser, args, "d", "p", "v12", "p0")
    p1 = _floats(args.p1) if args.p1 is not None else (0.0,) * int(args.d)
    p2 = (
        _floats(args.p2)
        if args.p2 is not None
        else (0.0,) * (int(args.d) * (int(args.d) + 1) // 2)
    )
    spec = TwoChannelSpec(int(args.d), args.p, args.v12, args.p0, p1, p2)
    res = two_channel_bound(spec)
    return {
        "status": "ok",
        "b21": res.b21,
        "c_p": res.c_p,
        "coupling": res.coupling,
        "lower_bound": res.lower_bound,
    }


def _cmd_verify(args, parser):
    if args.suite is not None and args.suite != "standard":
        parser.error(f"unknown suite {args.suite!r}")
    options = VerifyOptions(
        s_points=int(args.s_points) if args.s_points is not None else 11,
        widen=args.widen if args.widen is not None else 0.0,
    )
    res = run_suite(
        count=int(args.instances) if args.instances is not None else 500,
        dim_lo=int(args.dim_lo) if args.dim_lo is not None else 4,
        dim_hi=int(args.dim_hi) if args.dim_hi is not None else 40,
        seed=int(args.seed) if args.seed is not None else 20260822,
        options=options,
    )
    if args.csv is not None and _write_csv(args.csv, res.to_csv()) is None:
        return None
    checks = sum(len(r.checks) for r in res.reports)
    doc = {
        "status": "ok",
        "ok": res.ok,
        "instances": len(res.reports),
        "checks": checks,
        "failures": len(res.failures()),
        "worst_margin": min(c.margin for r in res.reports for c in r.checks),
        "elapsed": res.elapsed,
    }
    if args.csv is not None:
        doc["csv"] = args.csv
    return doc


def _clip_value(parser, args, magnitudes) -> float:
    if args.clip is not None:
        if args.clip <= 0:
            parser.error("--clip must be positive")
        return args.clip
    base = max((abs(float(m)) for m in magnitudes), default=0.0)
    if base <= 0:
        parser.error("region is unbounded; give a positive --clip")
    return 10.0 * base


def _cmd_sample_region(args, parser):
    _need(parser, args, "kind")
    resolution = int(args.resolution) if args.resolution is not None else 256
    if args.kind == "hyperbola":
        _need(parser, args, "a", "b")
        clip = _clip_value(parser, args, (args.a, args.b))
        segments = hyperbola_boundary(QuadBound(args.a, args.b), resolution, clip)
    elif args.kind == "strip":
        _need(parser, args, "lo", "hi")
        clip = _clip_value(parser, args, (args.lo, args.hi))
        segments = strip_boundary(args.lo, args.hi, resolution, clip)
    elif args.kind == "sector":
        _need(parser, args, "r_eps", "half_angle")
        clip = _clip_value(parser, args, (args.r_eps,))
        segments = sector_boundary(GKCover(args.r_eps, args.half_angle), resolution, clip)
    elif args.kind == "coulomb":
        _need(parser, args, "c1", "c2", "mass")
        clip = _clip_value(parser, args, (args.c1, args.c2, args.mass))
        region = dirac3d_coulomb(CoulombSpec(args.c1, args.c2, args.mass))
        segments = coulomb_boundary(region, resolution, clip)
    elif args.kind == "envelope":
        _need(parser, args, "p", "vnorm")
        ps = args.p if isinstance(args.p, list) else [args.p]
        clip = _clip_value(parser, args, list(ps) + [args.vnorm])
        segments = ()
        for p in ps:
            segments += envelope_boundary(DiracSpec(args.vnorm, float(p)), resolution, clip)
    else:
        parser.error(f"unknown region kind {args.kind!r}")
    text = segments_to_csv(segments)
    target = args.csv if args.csv is not None else "-"
    if _write_csv(target, text) is None:
        return None
    return {
        "status": "ok",
        "segments": len(segments),
        "rows": sum(len(s.re) for s in segments),
        "csv": target,
    }


# ---------------------------------------------------------------------------
# parser


def _add(sub, name, func, helptext, flags):
    p = sub.add_parser(name, help=helptext)
    for flag, kwargs in flags:
        p.add_argument(flag, **kwargs)
    p.add_argument("--json", metavar="FILE", help="read parameters from a JSON object ('-' for stdin)")
    p.set_defaults(func=func)
    return p


_F = {"type": float, "default": None}
_S = {"default": None}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gapcert",
        description="certified spectral enclosures for relatively bounded perturbations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    _add(sub, "enclose", _cmd_enclose, "hyperbola enclosure parameters", [
        ("--a", _F), ("--b", _F), ("--re", _F), ("--im", _F),
    ])
    _add(sub, "strip", _cmd_strip, "perturbed spectral-free strip", [
        ("--a", _F), ("--b", _F), ("--alpha", _F), ("--beta", _F),
    ])
    _add(sub, "resolvent", _cmd_resolvent, "resolvent norm bounds", [
        ("--a", _F), ("--b", _F), ("--re", _F), ("--im", _F),
        ("--alpha", _F), ("--beta", _F),
    ])
    _add(sub, "symmetric-gap", _cmd_symmetric_gap, "survived symmetric gap", [
        ("--a", _F), ("--b", _F), ("--beta", _F), ("--re", _F), ("--im", _F),
    ])
    _add(sub, "gk-cover", _cmd_gk_cover, "sector-plus-ball cover", [
        ("--c", _F), ("--p", _F), ("--eps", _F), ("--b", _F),
    ])
    _add(sub, "eig-strip", _cmd_eig_strip, "isolated-eigenvalue counting strip", [
        ("--a", _F), ("--b", _F), ("--lam", _F), ("--alpha", _F), ("--beta", _F),
        ("--mult", _F),
    ])
    band_flags = [
        ("--model", {"default": None, "choices": ["power-log", "geometric"]}),
        ("--p1", _F), ("--p2", _F), ("--q1", _F), ("--q2", _F),
        ("--length-prefactor", _F), ("--width-prefactor", _F),
        ("--ratio", _F), ("--band-ratio", _F), ("--alpha-scale", _F),
        ("--alphas", _S), ("--betas", _S), ("--window", _F),
    ]
    const_flags = [
        ("--a-coeff", _F), ("--a-power", _F), ("--a-log-power", _F),
        ("--b-coeff", _F), ("--b-power", _F), ("--b-log-power", _F),
    ]
    _add(sub, "gaps", _cmd_gaps, "endpoint-ratio gap verdict", band_flags + [("--delta-a", _F)])
    _add(sub, "kappa", _cmd_kappa, "limsup per-gap condition number", band_flags + const_flags + [
        ("--lengths", _S), ("--widths", _S), ("--a-seq", _S), ("--b-seq", _S),
    ])
    _add(sub, "growth-check", _cmd_growth_check, "necessary growth screen",
         band_flags + const_flags + [("--delta-a", _F), ("--a-seq", _S), ("--b-seq", _S)])
    _add(sub, "powerlaw", _cmd_powerlaw, "power-log band scale budget", [
        ("--p1", _F), ("--p2", _F), ("--q1", _F), ("--q2", _F),
        ("--length-prefactor", _F), ("--width-prefactor", _F),
    ] + const_flags)
    _add(sub, "structured", _cmd_structured, "block-structured bounds", [
        ("--shape", {"default": None, "choices": ["offdiag", "even", "odd"]}),
        ("--a12", _F), ("--b12", _F), ("--a21", _F), ("--b21", _F),
        ("--a11", _F), ("--b11", _F), ("--a22", _F), ("--b22", _F),
        ("--alpha", _F), ("--beta", _F), ("--beta1", _F), ("--beta2", _F),
    ])
    _add(sub, "dirac-envelope", _cmd_dirac_envelope, "planar Dirac envelope curve", [
        ("--p", _F), ("--vnorm", _F), ("--samples", _F), ("--b-min", _F), ("--b-max", _F),
        ("--re", _F), ("--csv", _S),
    ])
    _add(sub, "coulomb", _cmd_coulomb, "Coulomb-type spectrum region", [
        ("--c1", _F), ("--c2", _F), ("--mass", _F), ("--re", _F), ("--im", _F),
    ])
    _add(sub, "manifold", _cmd_manifold, "waveguide band relative bounds", [
        ("--c", _F), ("--p", _F), ("--case", _F), ("--n", _F), ("--eps-geom", _F),
        ("--length-prefactor", _F), ("--width-prefactor", _F),
        ("--pipeline", {"action": "store_true"}),
    ])
    _add(sub, "two-channel", _cmd_two_channel, "two-channel lower bound", [
        ("--d", _F), ("--p", _F), ("--v12", _F), ("--p0", _F),
        ("--p1", _S), ("--p2", _S),
    ])
    _add(sub, "verify", _cmd_verify, "run the matrix verification suite", [
        ("--suite", _S), ("--instances", _F), ("--seed", _F),
        ("--dim-lo", _F), ("--dim-hi", _F), ("--widen", _F), ("--s-points", _F),
        ("--csv", _S),
    ])
    _add(sub, "sample-region", _cmd_sample_region, "region boundary polylines as CSV", [
        ("--kind", {"default": None,
                    "choices": ["hyperbola", "strip", "sector", "coulomb", "envelope"]}),
        ("--resolution", _F), ("--clip", _F), ("--csv", _S),
        ("--a", _F), ("--b", _F), ("--lo", _F), ("--hi", _F),
        ("--r-eps", _F), ("--half-angle", _F),
        ("--c1", _F), ("--c2", _F), ("--mass", _F),
        ("--p", {"type": float, "action": "append", "default": None}),
        ("--vnorm", _F),
    ])
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _merge_json(parser, args)
    try:
        doc = args.func(args, parser)
    except ConditionNotApplicable as exc:
        print(json.dumps({"status": "not-applicable", "reason": str(exc)}))
        return 0
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if doc is not None:
        print(json.dumps(doc))
    return 0


if __name__ == "__main__":
    sys.exit(main())
