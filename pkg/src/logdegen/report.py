"""Full analysis report of a curve, with JSON round-tripping and a text layout."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .degeneration import (
    LogCurveData,
    betti_report,
    build_complexes,
    gluing_euler_oracle,
    graph_homology,
    picard_lefschetz,
    spectral_sequence,
)
from .zlin import IntMatrix

SCHEMA = 1


def _mat_to_obj(M: IntMatrix) -> dict:
    return {"shape": [M.rows, M.cols], "rows": M.tolist()}


def _mat_from_obj(obj: dict) -> IntMatrix:
    r, c = obj["shape"]
    return IntMatrix(r, c, [x for row in obj["rows"] for x in row])


def _table_to_obj(t: dict) -> list:
    return [[p, q, t[(p, q)]] for (p, q) in sorted(t)]


def _table_from_obj(rows: list) -> dict:
    return {(p, q): r for p, q, r in rows}


@dataclass(frozen=True)
class Report:
    vertices: tuple[str, ...]
    edges: tuple[str, ...]
    genus_by_vertex: tuple[int, ...]
    nu: tuple[int, ...]
    k: int
    h0_graph: int
    h1_graph: int
    h1_X: int
    h1_fiber: int
    genus: int
    genus_euler: int
    d1: IntMatrix
    cycle_basis: IntMatrix
    E2: dict
    Einf: dict
    d2: IntMatrix
    pairing_gram: IntMatrix
    rho: IntMatrix
    N: IntMatrix
    basis_blocks: tuple[int, int, int]
    legend: tuple[str, ...]
    unipotency_index: int

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "curve": {
                "components": [{"id": v, "genus": g} for v, g in zip(self.vertices, self.genus_by_vertex)],
                "nodes": [{"id": e, "nu": n} for e, n in zip(self.edges, self.nu)],
            },
            "gamma_multiple": self.k,
            "betti": {
                "h0_graph": self.h0_graph,
                "h1_graph": self.h1_graph,
                "h1_X": self.h1_X,
                "h1_fiber": self.h1_fiber,
                "genus": self.genus,
                "genus_euler": self.genus_euler,
            },
            "graph": {"d1": _mat_to_obj(self.d1), "cycle_basis": _mat_to_obj(self.cycle_basis)},
            "spectral_sequence": {
                "E2": _table_to_obj(self.E2),
                "Einf": _table_to_obj(self.Einf),
                "d2": _mat_to_obj(self.d2),
            },
            "monodromy": {
                "pairing_gram": _mat_to_obj(self.pairing_gram),
                "rho": _mat_to_obj(self.rho),
                "N": _mat_to_obj(self.N),
                "basis_blocks": list(self.basis_blocks),
                "legend": list(self.legend),
                "unipotency_index": self.unipotency_index,
            },
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "Report":
        if obj.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {obj.get('schema')!r}")
        c, b, g = obj["curve"], obj["betti"], obj["graph"]
        s, m = obj["spectral_sequence"], obj["monodromy"]
        return cls(
            vertices=tuple(x["id"] for x in c["components"]),
            edges=tuple(x["id"] for x in c["nodes"]),
            genus_by_vertex=tuple(x["genus"] for x in c["components"]),
            nu=tuple(x["nu"] for x in c["nodes"]),
            k=obj["gamma_multiple"],
            h0_graph=b["h0_graph"],
            h1_graph=b["h1_graph"],
            h1_X=b["h1_X"],
            h1_fiber=b["h1_fiber"],
            genus=b["genus"],
            genus_euler=b["genus_euler"],
            d1=_mat_from_obj(g["d1"]),
            cycle_basis=_mat_from_obj(g["cycle_basis"]),
            E2=_table_from_obj(s["E2"]),
            Einf=_table_from_obj(s["Einf"]),
            d2=_mat_from_obj(s["d2"]),
            pairing_gram=_mat_from_obj(m["pairing_gram"]),
            rho=_mat_from_obj(m["rho"]),
            N=_mat_from_obj(m["N"]),
            basis_blocks=tuple(m["basis_blocks"]),
            legend=tuple(m["legend"]),
            unipotency_index=m["unipotency_index"],
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        out = []
        out.append(f"components: {', '.join(f'{v} (g={g})' for v, g in zip(self.vertices, self.genus_by_vertex))}")
        out.append(f"nodes: {', '.join(f'{e} (nu={n})' for e, n in zip(self.edges, self.nu)) or '(none)'}")
        out.append(f"gamma multiple k = {self.k}")
        out.append("")
        out.append("Betti numbers")
        out.append(f"  h0(graph) = {self.h0_graph}   h1(graph) = {self.h1_graph}")
        out.append(f"  h1(special fiber) = {self.h1_X}   h1(general fiber) = {self.h1_fiber}")
        out.append(f"  genus = {self.genus}   (Euler characteristic check: {self.genus_euler})")
        out.append("")
        out.append("graph differential d1: C_1 -> C_0")
        out.extend(_render(self.d1, list(self.vertices), [f"d_{e}" for e in self.edges]))
        out.append("H_1(graph) basis (columns, in C_1)")
        out.extend(_render(self.cycle_basis, [f"d_{e}" for e in self.edges],
                           [f"h_{j + 1}" for j in range(self.cycle_basis.cols)]))
        out.append("")
        out.append("spectral sequence ranks  (p,q): E2 -> Einf")
        for key in sorted(self.E2):
            out.append(f"  {key}: {self.E2[key]} -> {self.Einf[key]}")
        out.append("d2: E2^{0,1} -> E2^{2,0}")
        out.extend(_render(self.d2, list(self.vertices), [f"d_{e}" for e in self.edges]))
        out.append("")
        out.append("monodromy pairing on H_1(graph)")
        hl = [f"h_{j + 1}" for j in range(self.pairing_gram.cols)]
        out.extend(_render(self.pairing_gram, hl, hl))
        beta, g2, _ = self.basis_blocks
        out.append(f"basis blocks: H^1(graph) {beta} | H^1(normalization) {g2} | H_1(graph) {beta}")
        for i, name in enumerate(self.legend):
            out.append(f"  [{i}] {name}")
        out.append(f"rho (unipotency index {self.unipotency_index})")
        out.extend(_render(self.rho))
        out.append("N = rho - id")
        out.extend(_render(self.N))
        return "\n".join(out) + "\n"


def _render(M: IntMatrix, row_names=None, col_names=None) -> list[str]:
    if M.rows == 0 or M.cols == 0:
        return [f"  ({M.rows}x{M.cols} empty)"]
    row_names = row_names or [f"[{i}]" for i in range(M.rows)]
    col_names = col_names or [f"[{j}]" for j in range(M.cols)]
    cells = [[str(x) for x in row] for row in M.tolist()]
    w = max(max(len(c) for row in cells for c in row), max(len(c) for c in col_names))
    lw = max(len(r) for r in row_names)
    lines = ["  " + " " * lw + "  " + " ".join(c.rjust(w) for c in col_names)]
    for name, row in zip(row_names, cells):
        lines.append("  " + name.ljust(lw) + "  " + " ".join(c.rjust(w) for c in row))
    return lines


def analyze(data: LogCurveData, k: int = 1) -> Report:
    G = data.graph
    gc = build_complexes(G)
    hom = graph_homology(gc)
    betti = betti_report(data)
    ss = spectral_sequence(data)
    mono = picard_lefschetz(data, k)
    return Report(
        vertices=G.vertices,
        edges=G.edges,
        genus_by_vertex=data.genus,
        nu=data.nu,
        k=k,
        h0_graph=hom.H0.free_rank,
        h1_graph=betti.h1_graph,
        h1_X=betti.h1_X,
        h1_fiber=betti.h1_fiber,
        genus=betti.genus,
        genus_euler=gluing_euler_oracle(data),
        d1=gc.d1,
        cycle_basis=hom.cycles,
        E2=ss.E2,
        Einf=ss.Einf,
        d2=ss.d2,
        pairing_gram=mono.pairing_gram,
        rho=mono.rho,
        N=mono.N,
        basis_blocks=mono.basis_blocks,
        legend=mono.legend,
        unipotency_index=mono.unipotency_index,
    )
