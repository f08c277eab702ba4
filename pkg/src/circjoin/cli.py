"""Command-line front-end.

Subcommands:

* ``spectrum``  - read a join document (JSON), print a spectrum report.
* ``graph``     - build a named graph join; emit its document or report.
* ``kuramoto``  - simulate / construct / check oscillator equilibria.

Join documents are JSON objects with keys ``blocks`` (list of defining
vectors), ``couplings`` (d x d table) and optional ``labels``; numbers
are bare reals or [re, im] pairs.  Exit codes: 0 success, 2 parse
error, 3 precondition error, 4 numerical error.
"""

import argparse
import json
import sys

import numpy as np

from .errors import (
    NumericalError,
    ParseError,
    PreconditionError,
    VerificationError,
)
from .graphs import (
    complete_graph,
    directed_cycle,
    join as join_graphs,
    remove_cycle_from_complete,
    ring_graph,
)
from .join import DENSE_CAP, JoinSpec, full_spectrum, reduced_char_poly
from .kuramoto import (
    KuramotoSystem,
    build_twisted_equilibrium,
    check_equilibrium,
    default_equilibrium_tol,
    integrate,
)
from .smalleig import _cluster

REPORT_CLUSTER_SCALE = 1e-9


# ---------------------------------------------------------------------------
# join documents
# ---------------------------------------------------------------------------

def _entry_to_complex(entry, where):
    if isinstance(entry, (int, float)) and not isinstance(entry, bool):
        return complex(entry)
    if (
        isinstance(entry, (list, tuple))
        and len(entry) == 2
        and all(isinstance(p, (int, float)) and not isinstance(p, bool) for p in entry)
    ):
        return complex(entry[0], entry[1])
    raise ParseError(f"{where}: expected a number or [re, im] pair, got {entry!r}")


def _complex_to_entry(z):
    z = complex(z)
    if z.imag == 0.0:
        return float(z.real)
    return [float(z.real), float(z.imag)]


def parse_join_document(text):
    """Parse a join document; returns (JoinSpec, labels or None)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    unknown = set(doc) - {"blocks", "couplings", "labels"}
    if unknown:
        raise ParseError(f"unknown document keys: {sorted(unknown)}")
    if "blocks" not in doc:
        raise ParseError("document is missing 'blocks'")
    raw_blocks = doc["blocks"]
    if not isinstance(raw_blocks, list) or not raw_blocks:
        raise ParseError("'blocks' must be a nonempty list of defining vectors")
    blocks = []
    for bi, raw in enumerate(raw_blocks):
        if not isinstance(raw, list) or not raw:
            raise ParseError(f"blocks[{bi}] must be a nonempty list")
        blocks.append(
            [_entry_to_complex(e, f"blocks[{bi}][{ei}]") for ei, e in enumerate(raw)]
        )
    d = len(blocks)
    raw_couplings = doc.get("couplings")
    if raw_couplings is None:
        if d > 1:
            raise ParseError("document is missing 'couplings'")
        couplings = np.zeros((1, 1), dtype=np.complex128)
    else:
        if not isinstance(raw_couplings, list) or len(raw_couplings) != d:
            raise ParseError(f"'couplings' must be a {d}x{d} table")
        couplings = np.zeros((d, d), dtype=np.complex128)
        for i, row in enumerate(raw_couplings):
            if not isinstance(row, list) or len(row) != d:
                raise ParseError(
                    f"couplings[{i}] has {len(row) if isinstance(row, list) else '?'}"
                    f" entries, expected {d} (ragged table)"
                )
            for j, e in enumerate(row):
                couplings[i, j] = _entry_to_complex(e, f"couplings[{i}][{j}]")
    labels = doc.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or not all(
            isinstance(s, str) for s in labels
        ):
            raise ParseError("'labels' must be a list of strings")
    try:
        spec = JoinSpec(blocks, couplings)
    except PreconditionError as exc:
        raise ParseError(str(exc)) from exc
    return spec, labels


def emit_join_document(join, labels=None):
    """Canonical document text; parsing and re-emitting is byte-stable."""
    doc = {
        "blocks": [[_complex_to_entry(c) for c in b.vector] for b in join.blocks],
        "couplings": [
            [_complex_to_entry(c) for c in row] for row in np.asarray(join.couplings)
        ],
    }
    if labels is not None:
        doc["labels"] = list(labels)
    return json.dumps(doc, indent=2) + "\n"


# ---------------------------------------------------------------------------
# spectrum reports
# ---------------------------------------------------------------------------

def _fmt17(x):
    return format(float(x), ".17g")


def _fmt_complex(z):
    z = complex(z)
    return f"{z.real:.17g}{z.imag:+.17g}i"


def _provenance_rank(p):
    return -1 if p == "condensed" else int(p)


def _report_rows(decomposition):
    """Cluster equal eigenvalues within each provenance group."""
    all_vals = [v for v, _ in decomposition.eigenvalues()]
    delta = REPORT_CLUSTER_SCALE * (1.0 + max((abs(v) for v in all_vals), default=0.0))
    rows = []
    per_block = {}
    for p in decomposition.circulant_pairs:
        per_block.setdefault(p.block, []).append(p.eigenvalue)
    for block in sorted(per_block):
        for mean, mult in _cluster(np.array(per_block[block]), delta):
            rows.append((mean, mult, block))
    cond = []
    for chain in decomposition.condensed_chains:
        cond.extend([chain.eigenvalue] * len(chain))
    if cond:
        for mean, mult in _cluster(np.array(cond), delta):
            rows.append((mean, mult, "condensed"))
    rows.sort(key=lambda r: (r[0].real, r[0].imag, _provenance_rank(r[2])))
    return rows


def _vector_json(vec):
    return [[float(z.real), float(z.imag)] for z in vec]


def decomposition_residual(join, decomposition, cap=DENSE_CAP):
    """Largest eigen/chain residual against the dense expansion.

    Returns (max residual, human-readable tag of the offender).
    """
    a = join.dense(cap=cap)
    worst = -1.0
    tag = "none"
    for p in decomposition.circulant_pairs:
        r = float(np.abs(a @ p.vector - p.eigenvalue * p.vector).max())
        if r > worst:
            worst, tag = r, f"block {p.block}, fourier index {p.fourier_index}"
    eye = np.eye(join.n, dtype=np.complex128)
    for ci, chain in enumerate(decomposition.expanded_chains):
        shifted = a - chain.eigenvalue * eye
        prev = np.zeros(join.n, dtype=np.complex128)
        for depth, u in enumerate(chain.vectors):
            r = float(np.abs(shifted @ u - prev).max())
            if r > worst:
                worst, tag = r, f"condensed chain {ci}, depth {depth + 1}"
            prev = u
    return max(worst, 0.0), tag


def spectrum_report(join, args):
    decomposition = full_spectrum(
        join,
        cluster_delta=args.cluster_delta,
        sigma_tol=args.sigma_tol,
        sweep_budget=args.sweep_budget,
    )
    rows = _report_rows(decomposition)
    report = {
        "n": join.n,
        "diagonalizable": decomposition.diagonalizable,
        "eigenvalues": [
            {
                "re": float(v.real),
                "im": float(v.imag),
                "multiplicity": mult,
                "provenance": prov,
            }
            for v, mult, prov in rows
        ],
        "reduced_char_poly": [
            [float(c.real), float(c.imag)] for c in reduced_char_poly(join)
        ],
    }
    if args.eigenvectors:
        report["eigenvectors"] = {
            "circulant": [
                {
                    "block": p.block,
                    "fourier_index": p.fourier_index,
                    "eigenvalue": [p.eigenvalue.real, p.eigenvalue.imag],
                    "vector": _vector_json(p.vector),
                }
                for p in decomposition.circulant_pairs
            ],
            "condensed": [
                {
                    "eigenvalue": [ch.eigenvalue.real, ch.eigenvalue.imag],
                    "chain": [_vector_json(u) for u in ch.vectors],
                }
                for ch in decomposition.expanded_chains
            ],
        }
    if args.verify:
        residual, offender = decomposition_residual(join, decomposition, cap=args.cap)
        a = join.dense(cap=args.cap)
        tol = args.verify_tol
        if tol is None:
            tol = 1e-8 * (1.0 + float(np.abs(a).sum(axis=1).max()))
        if residual > tol:
            raise VerificationError(
                f"residual {residual:.3e} exceeds tolerance {tol:.3e} at {offender}"
            )
        report["max_residual"] = residual
    return report


def _print_report(report, output):
    if output == "json":
        print(json.dumps(report, indent=2))
        return
    lines = ["eigenvalue,multiplicity,provenance"]
    for row in report["eigenvalues"]:
        z = complex(row["re"], row["im"])
        lines.append(f"{_fmt_complex(z)},{row['multiplicity']},{row['provenance']}")
    print("\n".join(lines))


# ---------------------------------------------------------------------------
# input helpers
# ---------------------------------------------------------------------------

def _read_input(path):
    if path in (None, "-"):
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _parse_phis(text):
    try:
        return [float(p) for p in text.split(",") if p.strip() != ""]
    except ValueError as exc:
        raise ParseError(f"invalid --phi list {text!r}") from exc


def _read_state(path):
    text = _read_input(path)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"invalid state JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(data, list) or not all(
        isinstance(x, (int, float)) and not isinstance(x, bool) for x in data
    ):
        raise ParseError("state file must be a JSON array of numbers")
    return np.asarray(data, dtype=np.float64)


# ---------------------------------------------------------------------------
# graph part specs
# ---------------------------------------------------------------------------

def _parse_part(spec):
    head, _, rest = spec.partition(":")
    if head == "complement":
        if not rest:
            raise ParseError(f"complement part needs a target: {spec!r}")
        return _parse_part(rest).complement()
    args = rest.split(":") if rest else []
    try:
        if head == "complete" and len(args) == 1:
            return complete_graph(int(args[0]))
        if head == "cycle" and len(args) == 1:
            return directed_cycle(int(args[0]))
        if head == "ring" and len(args) == 2:
            return ring_graph(int(args[0]), int(args[1]))
    except ValueError as exc:
        raise ParseError(f"invalid part spec {spec!r}") from exc
    raise ParseError(
        f"unknown part spec {spec!r}; use complete:N, cycle:K, ring:K:M "
        "or complement:<part>"
    )


def _build_graph(args):
    kind = args.kind
    if kind == "complete":
        if args.n is None:
            raise PreconditionError("complete needs --n")
        g = complete_graph(args.n)
        return join_graphs(g), [f"complete:{args.n}"]
    if kind == "cycle":
        if args.k is None:
            raise PreconditionError("cycle needs --k")
        return join_graphs(directed_cycle(args.k)), [f"cycle:{args.k}"]
    if kind == "ring":
        if args.k is None or args.m is None:
            raise PreconditionError("ring needs --k and --m")
        return join_graphs(ring_graph(args.k, args.m)), [f"ring:{args.k}:{args.m}"]
    if kind == "complement":
        if len(args.parts) != 1:
            raise PreconditionError("complement takes exactly one part spec")
        g = _parse_part(args.parts[0]).complement()
        return join_graphs(g), [f"complement:{args.parts[0]}"]
    if kind == "join":
        if not args.parts:
            raise PreconditionError("join needs at least one part spec")
        parts = [_parse_part(p) for p in args.parts]
        return join_graphs(*parts), list(args.parts)
    if kind == "remove-cycle":
        if args.n is None or args.k is None:
            raise PreconditionError("remove-cycle needs --n and --k")
        spec = remove_cycle_from_complete(args.n, args.k, args.directed)
        style = "directed" if args.directed else "undirected"
        labels = [
            f"complete:{args.k}-minus-{style}-cycle:{args.k}",
            f"complete:{args.n - args.k}",
        ]
        return spec, labels
    raise PreconditionError(f"unknown graph kind {kind!r}")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_spectrum(args):
    spec, _ = parse_join_document(_read_input(args.input))
    report = spectrum_report(spec, args)
    _print_report(report, args.output)
    return 0


def cmd_graph(args):
    spec, labels = _build_graph(args)
    if args.emit == "spec":
        sys.stdout.write(emit_join_document(spec, labels))
        return 0
    report = spectrum_report(spec, args)
    _print_report(report, args.output)
    return 0


def _kuramoto_system(args):
    spec, _ = parse_join_document(_read_input(args.input))
    return KuramotoSystem(spec, epsilon=args.epsilon, omega=args.omega)


def cmd_kuramoto_simulate(args):
    system = _kuramoto_system(args)
    if args.state is not None:
        theta0 = _read_state(args.state)
        if theta0.shape != (system.n,):
            raise PreconditionError(
                f"state has {theta0.shape[0]} phases, network has {system.n}"
            )
    elif args.j is not None:
        phis = _parse_phis(args.phi) if args.phi else [0.0] * system.network.d
        theta0 = build_twisted_equilibrium(system, args.j, phis).theta
    else:
        raise PreconditionError("simulate needs --state or --j (with optional --phi)")
    trajectory = integrate(system, theta0, args.dt, args.steps)
    header = "t," + ",".join(f"theta_{i + 1}" for i in range(system.n))
    out = [header]
    reduced = trajectory.reduced()
    for row, t in enumerate(trajectory.times):
        vals = ",".join(_fmt17(x) for x in reduced[row])
        out.append(f"{_fmt17(t)},{vals}")
    if args.drift:
        drift = float(np.abs(trajectory.thetas - trajectory.thetas[0]).max())
        out.append(f"# max_drift={_fmt17(drift)}")
    print("\n".join(out))
    return 0


def cmd_kuramoto_equilibrium(args):
    system = _kuramoto_system(args)
    if args.j is None:
        raise PreconditionError("equilibrium needs --j")
    phis = _parse_phis(args.phi) if args.phi else [0.0] * system.network.d
    state = build_twisted_equilibrium(system, args.j, phis)
    flag, residual = check_equilibrium(system, state.theta, tol=args.tol)
    report = {
        "fourier_index": state.fourier_index,
        "phi": [float(p) for p in state.phis],
        "theta0": [float(t) for t in state.theta],
        "residual": residual,
        "equilibrium": flag,
    }
    print(json.dumps(report, indent=2))
    return 0


def cmd_kuramoto_check(args):
    system = _kuramoto_system(args)
    if args.state is None:
        raise PreconditionError("check needs --state")
    theta = _read_state(args.state)
    if theta.shape != (system.n,):
        raise PreconditionError(
            f"state has {theta.shape[0]} phases, network has {system.n}"
        )
    tol = args.tol if args.tol is not None else default_equilibrium_tol(system)
    flag, residual = check_equilibrium(system, theta, tol=tol)
    report = {"equilibrium": flag, "residual": residual, "tol": tol}
    print(json.dumps(report, indent=2))
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_spectrum_flags(p):
    p.add_argument("--output", choices=("json", "csv"), default="json")
    p.add_argument("--eigenvectors", action="store_true",
                   help="include the generalized eigenbasis in the report")
    p.add_argument("--verify", action="store_true",
                   help="check all residuals against the dense expansion")
    p.add_argument("--verify-tol", type=float, default=None,
                   help="residual tolerance (default 1e-8 * (1 + inf-norm))")
    p.add_argument("--cap", type=int, default=DENSE_CAP,
                   help="dense expansion size cap used by --verify")
    p.add_argument("--cluster-delta", type=float, default=None,
                   help="condensed eigenvalue merge distance")
    p.add_argument("--sigma-tol", type=float, default=None,
                   help="null-space singular value threshold")
    p.add_argument("--sweep-budget", type=int, default=None,
                   help="QR sweep budget (default 100 * d^2)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="circjoin",
        description="Spectra of joins of circulant matrices, graph joins, "
        "and Kuramoto equilibria.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_spec = sub.add_parser("spectrum", help="spectrum of a join document")
    p_spec.add_argument("input", nargs="?", default="-",
                        help="join document path, or - for stdin")
    _add_spectrum_flags(p_spec)
    p_spec.set_defaults(func=cmd_spectrum)

    p_graph = sub.add_parser("graph", help="build a graph join")
    p_graph.add_argument(
        "kind",
        choices=("complete", "cycle", "ring", "complement", "join", "remove-cycle"),
    )
    p_graph.add_argument("parts", nargs="*",
                         help="part specs for join/complement, e.g. ring:5:1")
    p_graph.add_argument("--n", type=int, default=None)
    p_graph.add_argument("--k", type=int, default=None)
    p_graph.add_argument("--m", type=int, default=None)
    p_graph.add_argument("--directed", action="store_true")
    p_graph.add_argument("--emit", choices=("spec", "spectrum"), default="spec")
    _add_spectrum_flags(p_graph)
    p_graph.set_defaults(func=cmd_graph)

    p_kur = sub.add_parser("kuramoto", help="Kuramoto dynamics on a join")
    kur_sub = p_kur.add_subparsers(dest="subcommand", required=True)
    for name, func in (
        ("simulate", cmd_kuramoto_simulate),
        ("equilibrium", cmd_kuramoto_equilibrium),
        ("check", cmd_kuramoto_check),
    ):
        q = kur_sub.add_parser(name)
        q.add_argument("input", nargs="?", default="-",
                       help="join document path, or - for stdin")
        q.add_argument("--epsilon", type=float, default=1.0)
        q.add_argument("--omega", type=float, default=None,
                       help="uniform natural frequency (default 0)")
        q.add_argument("--j", type=int, default=None,
                       help="fourier winding index of the twisted state")
        q.add_argument("--phi", type=str, default=None,
                       help="comma-separated per-block phase offsets")
        q.add_argument("--state", type=str, default=None,
                       help="JSON array of phases")
        q.add_argument("--tol", type=float, default=None,
                       help="equilibrium residual tolerance")
        if name == "simulate":
            q.add_argument("--dt", type=float, default=0.01)
            q.add_argument("--steps", type=int, default=1000)
            q.add_argument("--drift", action="store_true",
                           help="append a max-drift comment line")
        q.set_defaults(func=func)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return int(code) if code is not None else 0
    try:
        return args.func(args) or 0
    except ParseError as exc:
        print(f"circjoin: parse error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"circjoin: precondition error: {exc}", file=sys.stderr)
        return 3
    except NumericalError as exc:
        print(f"circjoin: numerical error: {exc}", file=sys.stderr)
        return 4


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
