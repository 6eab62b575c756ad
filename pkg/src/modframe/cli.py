"""Command-line interface: instance inspection, DOT export, and the
theorem-suite runner."""

import argparse
import sys
import time

from . import errors
from ._util import bits
from .corpus import CORPUS_IDS, build_instance
from .dot import lattice_dot, space_dot
from .finmod import Caps, DEFAULT_CAPS, fully_invariant_lattice, submodule_lattice
from .psi import ler, psi_masks, regular_core
from .spectra import max_space, quantale_of_submodules, spec_space
from .suite import report_document, report_json, run_instance
from .topology import is_sober, soberification


def _parse_caps(text):
    caps = {"size": DEFAULT_CAPS.max_size,
            "hom": DEFAULT_CAPS.max_hom_candidates,
            "sub": DEFAULT_CAPS.max_submodules}
    if text:
        for item in text.split(","):
            key, sep, value = item.partition("=")
            if not sep or key not in caps or not value.isdigit():
                raise errors.PreconditionError(
                    f"--caps expects size=<n>,hom=<n>,sub=<n>; got {item!r}")
            caps[key] = int(value)
    return Caps(max_size=caps["size"], max_hom_candidates=caps["hom"],
                max_submodules=caps["sub"])


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_lattice(args):
    caps = _parse_caps(args.caps)
    instance_id, M = build_instance(args.spec, caps=caps)
    sl = fully_invariant_lattice(M) if args.fi else submodule_lattice(M)
    which = "Lambda_fi(M)" if args.fi else "Lambda(M)"
    if args.dot:
        _emit(lattice_dot(sl.lattice, name="lattice"), args.out)
        return 0
    lines = [f"instance: {instance_id}",
             f"{which}: {sl.lattice.n} elements",
             "elements: " + ", ".join(sl.lattice.labels)]
    covers = "; ".join(f"{sl.lattice.label(i)} < {sl.lattice.label(j)}"
                       for i, j in sl.lattice.covers())
    lines.append(f"covers: {covers}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_spec(args):
    caps = _parse_caps(args.caps)
    instance_id, M = build_instance(args.spec, caps=caps)
    ss = spec_space(M)
    lines = [f"instance: {instance_id}",
             "Spec(M) points: " + ", ".join(
                 M.submodule_label(m) for m in ss.point_masks),
             f"|SP| = {len(ss.fixed_masks)}",
             "SP(M): " + ", ".join(M.submodule_label(m) for m in ss.fixed_masks),
             f"sober: {is_sober(ss.space).sober}"]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_max(args):
    caps = _parse_caps(args.caps)
    instance_id, M = build_instance(args.spec, caps=caps)
    ss = max_space(M)
    fil = ss.base
    tau = ss.nucleus.map.table
    tau_text = "; ".join(
        f"{fil.lattice.label(a)} -> {fil.lattice.label(tau[a])}"
        for a in range(fil.lattice.n))
    iso_text = "; ".join(
        f"{M.submodule_label(m)} -> "
        + "{" + ",".join(ss.space.label(i) for i in bits(ss.open_of[fil.index[m]])) + "}"
        for m in ss.fixed_masks)
    lines = [f"instance: {instance_id}",
             "mx(M) points: " + ", ".join(
                 M.submodule_label(m) for m in ss.point_masks),
             f"|SPm| = {len(ss.fixed_masks)}",
             "SPm(M): " + ", ".join(M.submodule_label(m) for m in ss.fixed_masks),
             f"tau: {tau_text}",
             f"iso to O(mx(M)): {iso_text}"]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_psi(args):
    caps = _parse_caps(args.caps)
    instance_id, M = build_instance(args.spec, caps=caps)
    pm = psi_masks(M)
    fil = fully_invariant_lattice(M)
    ler_text = "; ".join(
        f"{M.submodule_label(m)} -> "
        f"{ler(M, M.submodule(m, check=False)).label}"
        for m in fil.masks)
    lines = [f"instance: {instance_id}",
             f"|Psi| = {len(pm)}",
             "Psi(M): " + ", ".join(M.submodule_label(m) for m in pm),
             f"Ler: {ler_text}"]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_regcore(args):
    caps = _parse_caps(args.caps)
    instance_id, M = build_instance(args.spec, caps=caps)
    mq = quantale_of_submodules(M)
    trace = regular_core(mq.quantale)
    fil = mq.submodules
    lines = [f"instance: {instance_id}"]
    for k, stage in enumerate(trace.stages):
        labels = ", ".join(fil.lattice.label(a) for a in stage)
        lines.append(f"stage {k}: {len(stage)} elements: {labels}")
    lines.append(f"stable at stage {trace.stable_index}")
    lines.append("core is a regular frame: true")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_sober(args):
    caps = _parse_caps(args.caps)
    instance_id, M = build_instance(args.spec, caps=caps)
    ss = spec_space(M) if args.space == "spec" else max_space(M)
    rep = is_sober(ss.space)
    sob, _zeta = soberification(ss.space)
    lines = [f"instance: {instance_id}  space: {args.space}",
             "points: " + ", ".join(ss.space.label(i) for i in range(ss.space.n)),
             f"sober: {rep.sober}"]
    for mask, gens in rep.violations:
        members = "{" + ",".join(ss.space.label(i) for i in bits(mask)) + "}"
        lines.append(f"irreducible {members} has {len(gens)} generic points")
    lines.append(f"soberification: {sob.n} points")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_check(args):
    caps = _parse_caps(args.caps)
    ids = list(args.spec)
    if args.corpus or not ids:
        ids = list(CORPUS_IDS)
    reports = []
    timings = {}
    for i in ids:
        t0 = time.perf_counter()
        reports.append(run_instance(i, caps=caps, seed=args.seed))
        timings[i] = round(time.perf_counter() - t0, 3)
    doc = report_document(reports, caps=caps, seed=args.seed,
                          timings=timings if args.timings else None)
    _emit(report_json(doc), args.out)
    return 1 if doc["summary"]["fail"] else 0


def _cmd_export_dot(args):
    caps = _parse_caps(args.caps)
    _, M = build_instance(args.spec, caps=caps)
    if args.what == "lattice":
        text = lattice_dot(submodule_lattice(M).lattice, name="lattice")
    elif args.what == "fi":
        text = lattice_dot(fully_invariant_lattice(M).lattice, name="fi")
    elif args.what == "max":
        text = space_dot(max_space(M).space, name="mx")
    else:
        text = space_dot(spec_space(M).space, name="spec")
    _emit(text, args.out)
    return 0


def _add_common(p):
    p.add_argument("--caps", default="", metavar="size=N,hom=N,sub=N",
                   help="enumeration caps")
    p.add_argument("--out", default=None, help="write output to a file")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="modframe",
        description="Finite module spectra, frames and their theorem suite.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lattice", help="print or export a submodule lattice")
    p.add_argument("spec")
    p.add_argument("--fi", action="store_true", help="fully invariant lattice")
    p.add_argument("--dot", action="store_true", help="emit DOT")
    _add_common(p)
    p.set_defaults(fn=_cmd_lattice)

    p = sub.add_parser("spec", help="prime spectrum, SP(M) and sobriety")
    p.add_argument("spec")
    _add_common(p)
    p.set_defaults(fn=_cmd_spec)

    p = sub.add_parser("max", help="mx(M), SPm(M), tau and the frame isomorphism")
    p.add_argument("spec")
    _add_common(p)
    p.set_defaults(fn=_cmd_max)

    p = sub.add_parser("psi", help="the annihilator frame and the Ler table")
    p.add_argument("spec")
    _add_common(p)
    p.set_defaults(fn=_cmd_psi)

    p = sub.add_parser("regcore", help="regular core stages of the fi quantale")
    p.add_argument("spec")
    _add_common(p)
    p.set_defaults(fn=_cmd_regcore)

    p = sub.add_parser("sober", help="sobriety and soberification of a spectrum")
    p.add_argument("spec")
    p.add_argument("--space", choices=("spec", "max"), default="max")
    _add_common(p)
    p.set_defaults(fn=_cmd_sober)

    p = sub.add_parser("check", help="run the theorem suite")
    p.add_argument("spec", nargs="*", help="instances (default: built-in corpus)")
    p.add_argument("--corpus", action="store_true", help="run the built-in corpus")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for the sampled law sweeps")
    p.add_argument("--timings", action="store_true",
                   help="include wall-clock timings (breaks byte determinism)")
    _add_common(p)
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("export-dot", help="DOT for a lattice or spectrum space")
    p.add_argument("spec")
    p.add_argument("--what", choices=("lattice", "fi", "max", "spec"),
                   default="lattice")
    _add_common(p)
    p.set_defaults(fn=_cmd_export_dot)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except errors.ModframeError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
