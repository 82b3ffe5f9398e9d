"""Deterministic exact (multi-)cover search.

Columns carry a demand; a solution is a set of distinct rows covering every
column exactly as often as it demands.  With all demands equal to 1 this is
Algorithm X over dict-of-sets columns.  Branching is on the column with the
least slack (candidate rows minus demand), lowest column index on ties; rows
are tried in ascending index order.  Rows already rejected for a column are
excluded from the rest of that branch, so each row set is reached once.
"""
from __future__ import annotations

from typing import Sequence


class BudgetExceeded(RuntimeError):
    """The search used up its node budget before finishing."""

    def __init__(self, nodes: int):
        self.nodes = nodes
        super().__init__(f"search budget exhausted after {nodes} nodes")


class ExactCover:
    def __init__(self, rows: Sequence[Sequence[int]], demand: dict[int, int]):
        self.rows = [tuple(r) for r in rows]
        self.demand = dict(demand)
        self.nodes = 0
        for r in self.rows:
            for c in r:
                if c not in self.demand:
                    raise ValueError(f"row references unknown column {c}")

    def solve(self, budget: int, forced: Sequence[int] = ()) -> list[int] | None:
        """First solution as sorted row indices, or None if none exists.

        ``forced`` rows are committed before branching starts.
        Raises :class:`BudgetExceeded` once more than ``budget`` rows have been tried.
        """
        if budget <= 0:
            raise ValueError("budget must be positive")
        self.nodes = 0
        self._budget = budget
        need = {c: d for c, d in self.demand.items() if d > 0}
        cols: dict[int, set[int]] = {c: set() for c in need}
        for i, r in enumerate(self.rows):
            if all(c in need for c in r):
                for c in r:
                    cols[c].add(i)
        self._need = need
        self._cols = cols
        chosen: list[int] = []
        for i in forced:
            if any(i not in cols.get(c, ()) for c in self.rows[i]):
                return None
            self._take(i, [])
            chosen.append(i)
        found = self._search(chosen)
        return sorted(found) if found is not None else None

    # each undo log entry: ("row", i) re-adds row i; ("col", c, rows) restores column c
    def _drop_row(self, i: int, log: list):
        for c in self.rows[i]:
            s = self._cols.get(c)
            if s is not None:
                s.discard(i)
        log.append(("row", i))

    def _take(self, i: int, log: list):
        self._drop_row(i, log)
        for c in self.rows[i]:
            self._need[c] -= 1
            log.append(("need", c))
            if self._need[c] == 0:
                rows = self._cols.pop(c)
                log.append(("col", c, rows))
                for j in list(rows):
                    self._drop_row(j, log)

    def _undo(self, log: list):
        while log:
            entry = log.pop()
            if entry[0] == "row":
                i = entry[1]
                for c in self.rows[i]:
                    s = self._cols.get(c)
                    if s is not None:
                        s.add(i)
            elif entry[0] == "need":
                self._need[entry[1]] += 1
            else:
                _, c, rows = entry
                self._cols[c] = rows

    def _search(self, chosen: list[int]) -> list[int] | None:
        if not self._cols:
            return list(chosen)
        col = min(self._cols, key=lambda c: (len(self._cols[c]) - self._need[c], c))
        if len(self._cols[col]) < self._need[col]:
            return None
        rejected: list = []
        for i in sorted(self._cols[col]):
            if len(self._cols.get(col, ())) < self._need.get(col, 0):
                break
            self.nodes += 1
            if self.nodes > self._budget:
                raise BudgetExceeded(self.nodes)
            log: list = []
            self._take(i, log)
            chosen.append(i)
            found = self._search(chosen)
            chosen.pop()
            self._undo(log)
            if found is not None:
                self._undo(rejected)
                return found
            self._drop_row(i, rejected)
        self._undo(rejected)
        return None
