"""Published ground-state tables and their recomputation."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .hulthen import HulthenParams, energy


@lru_cache(maxsize=None)
def published() -> dict:
    text = resources.files("confkg").joinpath("data/published_tables.json").read_text()
    return json.loads(text)


def table_ids():
    return tuple(int(k) for k in published()["tables"])


@dataclass(frozen=True)
class Cell:
    table: int
    alpha: float
    q: float
    mu: Fraction
    printed: str
    computed: float

    @property
    def params(self) -> HulthenParams:
        return HulthenParams.compton(published()["S0"], self.alpha, self.q, self.mu)


def cells(which: int | None = None):
    """Every table cell with its printed and recomputed ground-state energy."""
    data = published()
    mus = [Fraction(m) for m in data["mu"]]
    out = []
    for tid, tab in data["tables"].items():
        if which is not None and int(tid) != which:
            continue
        for q, row in zip(data["q"], tab["rows"]):
            for mu, printed in zip(mus, row):
                p = HulthenParams.compton(data["S0"], tab["alpha"], q, mu)
                out.append(Cell(int(tid), tab["alpha"], q, mu, printed, energy(0, p).energy))
    return out


def misprints(which: int | None = None):
    return [m for m in published()["misprints"] if which is None or m["table"] == which]


def is_misprint(cell: Cell) -> bool:
    return any(
        m["table"] == cell.table and m["q"] == cell.q and Fraction(m["mu"]) == cell.mu
        for m in published()["misprints"]
    )
