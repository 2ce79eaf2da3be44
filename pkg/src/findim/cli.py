"""``findim`` command-line interface.

    findim <classify|graph|decide|closure|report> [--json] [--dot]
           [--max-weight N] [--max-elements N] INPUT.json

Exit codes: 0 success with a verdict, 1 invalid input or usage, 2 honest
indeterminacy (Undecided decision, CapExceeded closure, no graph defined).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from . import __version__
from .algebra import TypeI, TypeII, classify, format_rational, pretty
from .closure import (
    DEFAULT_MAX_ELEMENTS,
    DEFAULT_MAX_WEIGHT,
    CapExceeded,
    Closed,
    ClosureResult,
    ConfigurationError,
    GradedBasis,
    close,
    model_filiform_check,
    series_analysis,
)
from .criteria import (
    DecisionReport,
    EmptyWitness,
    InfiniteWitness,
    Type1Finite,
    Type2Finite,
    UndecidedReason,
    Verdict,
    decide,
)
from .document import InputDocument, ParseError, parse, rational_text
from .graphs import DiGraph, build_gamma_type1, build_gamma_type2, build_variable_graph, cycle_vertices, to_dot

COMMANDS = ("classify", "graph", "decide", "closure", "report")
EXIT_OK, EXIT_INVALID, EXIT_INDETERMINATE = 0, 1, 2


def _rat(v) -> List[str]:
    return [rational_text(x) for x in v]


# --- JSON views ----------------------------------------------------------------


def classification_json(doc: InputDocument) -> list:
    out = []
    for k, D in enumerate(doc.derivations()):
        cls = classify(D)
        entry = {
            "index": k + 1,
            "derivation": pretty(D),
            "degree": list(D.degree),
            "coeffs": _rat(D.coeffs),
            "weight": D.weight,
        }
        if isinstance(cls, TypeI):
            entry.update({"class": "TypeI", "i": cls.i + 1, "a": list(cls.a)})
        elif isinstance(cls, TypeII):
            entry.update({"class": "TypeII", "p": list(cls.p), "beta": _rat(cls.beta)})
        else:
            entry.update({"class": "LaurentOnly", "note": "not in W_n"})
        out.append(entry)
    return out


def decision_json(report: DecisionReport) -> dict:
    w = report.witness
    out = {"verdict": report.verdict.value, "kind": report.kind}
    if isinstance(w, EmptyWitness):
        out["witness"] = {"dimension": w.dimension}
    elif isinstance(w, Type1Finite):
        out["witness"] = {
            "cycle_vertices": [v + 1 for v in w.cycle_vertices],
            "cycle_weights": list(w.weights),
        }
    elif isinstance(w, Type2Finite):
        out["witness"] = {
            "ordering": [v + 1 for v in w.order],
            "r": [{"i": i + 1, "j": j + 1, "r": r} for (i, j), r in w.r_table.items()],
            "spectators": [v + 1 for v in w.spectators],
        }
    elif isinstance(w, InfiniteWitness):
        out["witness"] = {"lemma": w.lemma, "vertices": [v + 1 for v in w.vertices], "detail": w.detail}
    elif isinstance(w, UndecidedReason):
        out["witness"] = {"reason": w.reason, "recommendation": w.recommendation}
    return out


def _basis_json(basis: GradedBasis) -> list:
    return [
        {"index": k + 1, "degree": list(D.degree), "coeffs": _rat(D.coeffs), "derivation": pretty(D)}
        for k, D in enumerate(basis.elements())
    ]


def closure_json(result: ClosureResult) -> dict:
    if isinstance(result, CapExceeded):
        return {
            "status": "CapExceeded",
            "cap": result.cap,
            "generations": result.generations,
            "partial_dimension": result.last_basis.total_dim,
        }
    out = {
        "status": "Closed",
        "dimension": result.dimension,
        "generations": result.generations,
        "basis": _basis_json(result.basis),
        "generators_in_basis": [
            [{"basis": k + 1, "coeff": rational_text(c)} for k, c in sorted(coords.items())]
            for coords in result.generator_coords
        ],
        "structure_constants": [
            {"i": i + 1, "j": j + 1, "bracket": [{"basis": k + 1, "coeff": rational_text(c)} for k, c in sorted(v.items())]}
            for (i, j), v in sorted(result.structure_constants.items())
            if v
        ],
    }
    s = series_analysis(result)
    out["series"] = {
        "lower_central": list(s.lower_central),
        "derived": list(s.derived),
        "nilpotent": s.nilpotent,
        "nilpotency_class": s.nilpotency_class,
        "solvable": s.solvable,
        "derived_length": s.derived_length,
    }
    if result.dimension >= 3:
        f = model_filiform_check(result)
        out["model_filiform"] = {
            "is_model_filiform": f.is_model_filiform,
            "chain": [pretty(D) for D in f.chain],
        }
    return out


# --- text views ----------------------------------------------------------------


def classification_text(doc: InputDocument) -> str:
    lines = ["#  class                     weight  degree        derivation"]
    for e in classification_json(doc):
        cls = e["class"] + (" (not in W_n)" if e["class"] == "LaurentOnly" else "")
        deg = "(" + ",".join(str(x) for x in e["degree"]) + ")"
        lines.append(f"{e['index']:<2} {cls:<25} {e['weight']:>6}  {deg:<12}  {e['derivation']}")
    return "\n".join(lines) + "\n"


def decision_text(report: DecisionReport) -> str:
    d = decision_json(report)
    lines = [f"verdict: {d['verdict']} ({d['kind']})"]
    w = d.get("witness", {})
    if "ordering" in w:
        lines.append("ordering: " + " < ".join(f"D{v}" for v in w["ordering"]))
        for e in w["r"]:
            lines.append(f"  r[{e['i']},{e['j']}] = {e['r']}")
        if w["spectators"]:
            lines.append("weight-zero spectators: " + ", ".join(f"D{v}" for v in w["spectators"]))
    elif "cycle_vertices" in w:
        if w["cycle_vertices"]:
            lines.append("cycle vertices (all weight 0): " + ", ".join(f"D{v}" for v in w["cycle_vertices"]))
        else:
            lines.append("generator graph is acyclic")
    elif "lemma" in w:
        lines.append(f"witness [{w['lemma']}]: " + " -> ".join(f"D{v}" for v in w["vertices"]))
        lines.append(f"  {w['detail']}")
    elif "reason" in w:
        lines.append(f"reason: {w['reason']}")
        lines.append(f"recommendation: {w['recommendation']}")
    elif "dimension" in w:
        lines.append("empty generator set: dimension 0")
    return "\n".join(lines) + "\n"


def _combination(terms) -> str:
    out = ""
    for t in terms:
        c = Fraction(t["coeff"])
        sign = "-" if c < 0 else "+"
        mag = "" if abs(c) == 1 else format_rational(abs(c)) + "*"
        out += f" {sign} {mag}b{t['basis']}" if out else f"{'-' if c < 0 else ''}{mag}b{t['basis']}"
    return out


def closure_text(result: ClosureResult) -> str:
    d = closure_json(result)
    if d["status"] == "CapExceeded":
        return (
            f"closure: CapExceeded ({d['cap']} cap) after {d['generations']} generations, "
            f"{d['partial_dimension']} elements so far\n"
            "note: this is a semidecision bound, not a proof of infinite dimension\n"
        )
    lines = [f"closure: Closed, dimension {d['dimension']}, {d['generations']} generations", "basis:"]
    for b in d["basis"]:
        lines.append(f"  b{b['index']} = {b['derivation']}")
    if d["structure_constants"]:
        lines.append("brackets:")
    for e in d["structure_constants"]:
        lines.append(f"  [b{e['i']}, b{e['j']}] = {_combination(e['bracket'])}")
    s = d["series"]
    lines.append("lower central series dims: " + ", ".join(str(x) for x in s["lower_central"]))
    lines.append("derived series dims: " + ", ".join(str(x) for x in s["derived"]))
    if s["nilpotent"]:
        lines.append(f"nilpotent of class {s['nilpotency_class']}")
    else:
        lines.append("not nilpotent")
    lines.append("solvable" if s["solvable"] else "not solvable")
    if "model_filiform" in d:
        lines.append(f"model filiform: {'yes' if d['model_filiform']['is_model_filiform'] else 'no'}")
    return "\n".join(lines) + "\n"


# --- graph --------------------------------------------------------------------


def gamma_graph(doc: InputDocument) -> Optional[DiGraph]:
    gens = doc.derivations()
    if not gens:
        return DiGraph(0)
    classes = [classify(g) for g in gens]
    labels = [pretty(g) for g in gens]
    if all(isinstance(c, TypeI) for c in classes):
        return build_gamma_type1(classes, labels)
    if all(isinstance(c, TypeII) for c in classes):
        return build_gamma_type2(classes, labels)
    return None


def graph_text(g: DiGraph) -> str:
    lines = [f"vertices: {g.vertex_count}"]
    for u, v in sorted(g.edges):
        lines.append(f"  D{u + 1} -> D{v + 1}")
    cyc = sorted(cycle_vertices(g))
    lines.append("on cycles: " + (", ".join(f"D{v + 1}" for v in cyc) if cyc else "none"))
    return "\n".join(lines) + "\n"


# --- driver ---------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="findim", description="Finite dimensionality of Lie algebras of homogeneous derivations.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", help="input document (JSON)")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--dot", action="store_true", help="graph: emit DOT")
    p.add_argument("--variables", action="store_true", help="graph: variable graph of a type I set")
    p.add_argument("--max-weight", type=int, default=DEFAULT_MAX_WEIGHT)
    p.add_argument("--max-elements", type=int, default=DEFAULT_MAX_ELEMENTS)
    p.add_argument("--version", action="version", version=f"findim {__version__}")
    return p


def _write(text: str) -> None:
    sys.stdout.write(text)


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with open(args.input, encoding="utf-8") as fh:
            doc = parse(fh.read())
    except OSError as exc:
        sys.stderr.write(f"error[io]: {exc}\n")
        return EXIT_INVALID
    except ParseError as exc:
        sys.stderr.write(f"error[{exc.code}]: {exc.where}: {exc.message}\n")
        return EXIT_INVALID

    gens = doc.derivations()
    if args.command == "classify":
        _write(_dump(classification_json(doc)) if args.json else classification_text(doc))
        return EXIT_OK

    if args.command == "graph":
        if args.variables:
            try:
                g = build_variable_graph(gens, doc.n)
            except ValueError as exc:
                sys.stderr.write(f"error: {exc}\n")
                return EXIT_INDETERMINATE
        else:
            g = gamma_graph(doc)
            if g is None:
                sys.stderr.write("no generator graph: the set is not purely type I or purely type II\n")
                return EXIT_INDETERMINATE
        _write(to_dot(g) if args.dot else graph_text(g))
        return EXIT_OK

    if args.command == "decide":
        report = decide(gens)
        _write(_dump(decision_json(report)) if args.json else decision_text(report))
        return EXIT_INDETERMINATE if report.verdict == Verdict.UNDECIDED else EXIT_OK

    try:
        result = close(gens, args.max_weight, args.max_elements)
    except ConfigurationError as exc:
        sys.stderr.write(f"error[configuration]: {exc}\n")
        return EXIT_INVALID

    if args.command == "closure":
        _write(_dump(closure_json(result)) if args.json else closure_text(result))
        return EXIT_INDETERMINATE if isinstance(result, CapExceeded) else EXIT_OK

    # report
    report = decide(gens)
    g = gamma_graph(doc)
    answered = report.verdict != Verdict.UNDECIDED or isinstance(result, Closed)
    if args.json:
        _write(
            _dump(
                {
                    "n": doc.n,
                    "classification": classification_json(doc),
                    "decision": decision_json(report),
                    "closure": closure_json(result),
                    "graph_dot": to_dot(g) if g is not None else None,
                }
            )
        )
    else:
        parts = [classification_text(doc), decision_text(report), closure_text(result)]
        if g is not None:
            parts.append(to_dot(g))
        _write("\n".join(parts))
    return EXIT_OK if answered else EXIT_INDETERMINATE


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
