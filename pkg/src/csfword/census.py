"""Small-graph census: one classification row per isomorphism class."""

from __future__ import annotations

import io
import json
from dataclasses import dataclass

from .csf import csf_uniform_rep_number
from .errors import ValidationError
from .graphs import SimpleGraph, canonical_form, clique_number, graph_classes
from .represent import SearchBounds, representation_number

SCHEMA = "csfword/1"

CSV_COLUMNS = [
    "n",
    "canonical_key",
    "edge_count",
    "clique_number",
    "representation_number",
    "representation_exact",
    "csf_uniform_number",
    "csf_exact",
    "csf_exact_via",
    "rep_witness",
    "csf_witness",
    "k_max",
    "n_max",
    "node_budget",
]


@dataclass(frozen=True)
class CensusRecord:
    canonical_key: str
    n: int
    edge_count: int
    clique_number: int
    representation_number: int | None
    csf_uniform_number: int | None
    representation_exact: bool
    csf_exact: bool
    csf_exact_via: str | None
    rep_witness: str | None
    csf_witness: str | None
    bounds: SearchBounds

    def validate(self) -> None:
        complete = self.edge_count == self.n * (self.n - 1) // 2
        if self.representation_number is not None:
            if (self.representation_number == 1) != complete:
                raise ValidationError(
                    f"{self.canonical_key}: representation number 1 must coincide with completeness"
                )
        if self.csf_uniform_number is not None and not complete:
            if self.csf_uniform_number < self.clique_number + 1:
                raise ValidationError(
                    f"{self.canonical_key}: csf number below clique_number + 1"
                )

    def to_json_obj(self) -> dict:
        return {
            "canonical_key": self.canonical_key,
            "n": self.n,
            "edge_count": self.edge_count,
            "clique_number": self.clique_number,
            "representation_number": self.representation_number,
            "representation_exact": self.representation_exact,
            "csf_uniform_number": self.csf_uniform_number,
            "csf_exact": self.csf_exact,
            "csf_exact_via": self.csf_exact_via,
            "rep_witness": self.rep_witness,
            "csf_witness": self.csf_witness,
            "bounds": {
                "k_max": self.bounds.k_max,
                "n_max": self.bounds.n_max,
                "node_budget": self.bounds.node_budget,
            },
        }


def classify_graph(g: SimpleGraph, bounds: SearchBounds) -> CensusRecord:
    rep = representation_number(g, bounds)
    rep_exact = rep.value is not None and all(
        rep.exhausted_per_k.get(k, False) for k in range(1, rep.value)
    )
    csf = csf_uniform_rep_number(g, bounds)
    record = CensusRecord(
        canonical_key=canonical_form(g),
        n=len(g.vertices),
        edge_count=g.edge_count,
        clique_number=clique_number(g),
        representation_number=rep.value,
        csf_uniform_number=csf.value,
        representation_exact=rep_exact,
        csf_exact=csf.exact,
        csf_exact_via=csf.exact_via,
        rep_witness=str(rep.witness) if rep.witness is not None else None,
        csf_witness=str(csf.witness) if csf.witness is not None else None,
        bounds=bounds,
    )
    record.validate()
    return record


def build_census(n: int, bounds: SearchBounds | None = None) -> list[CensusRecord]:
    """Classify every isomorphism class on exactly n vertices.  Rows come out
    in deterministic canonical-key order; inconclusive searches keep their
    row with null values rather than being dropped."""
    bounds = bounds or SearchBounds()
    if n > bounds.n_max:
        bounds = SearchBounds(k_max=bounds.k_max, n_max=n, node_budget=bounds.node_budget)
    records = [classify_graph(g, bounds) for g in graph_classes(n)]
    records.sort(key=lambda r: (r.n, r.canonical_key))
    return records


def census_to_json(records: list[CensusRecord]) -> str:
    return json.dumps(
        {"schema": SCHEMA, "records": [r.to_json_obj() for r in records]},
        indent=2,
        sort_keys=True,
    ) + "\n"


def census_to_csv(records: list[CensusRecord]) -> str:
    out = io.StringIO()
    out.write(",".join(CSV_COLUMNS) + "\n")
    for r in records:
        row = [
            str(r.n),
            r.canonical_key,
            str(r.edge_count),
            str(r.clique_number),
            "" if r.representation_number is None else str(r.representation_number),
            str(r.representation_exact).lower(),
            "" if r.csf_uniform_number is None else str(r.csf_uniform_number),
            str(r.csf_exact).lower(),
            r.csf_exact_via or "",
            r.rep_witness or "",
            r.csf_witness or "",
            str(r.bounds.k_max),
            str(r.bounds.n_max),
            str(r.bounds.node_budget),
        ]
        out.write(",".join(field.replace(",", ";") for field in row) + "\n")
    return out.getvalue()
