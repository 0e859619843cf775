"""Coset enumeration for two-generator presentations.

Enumerates cosets of the trivial subgroup (so the coset count is the group
order when the enumeration closes) with the relator-scanning strategy:
process live cosets in order, trace every relator from each, fill gaps with
new cosets, and merge coincidences through a union-find table.
"""

from __future__ import annotations

from dataclasses import dataclass

from primpow.words import Word

# column layout: a, a^-1, b, b^-1
_NCOLS = 4


def _word_columns(w: Word) -> list[int]:
    cols = []
    for letter in w.letters():
        if letter == 1:
            cols.append(0)
        elif letter == -1:
            cols.append(1)
        elif letter == 2:
            cols.append(2)
        else:
            cols.append(3)
    return cols


def _inv_col(c: int) -> int:
    return c ^ 1


class CosetLimitExceeded(RuntimeError):
    """The table grew past the requested limit before closing."""


@dataclass(frozen=True)
class Presentation:
    relators: tuple[Word, ...]

    def __init__(self, relators):
        rel = tuple(relators)
        if not rel:
            raise ValueError("at least one relator required")
        for r in rel:
            if not isinstance(r, Word) or r.is_identity():
                raise ValueError("relators must be nonempty reduced words")
        object.__setattr__(self, "relators", rel)

    @staticmethod
    def parse(texts) -> "Presentation":
        return Presentation([Word.parse(t) for t in texts])


class _Table:
    def __init__(self, limit: int):
        self.limit = limit
        self.table = [[None] * _NCOLS]
        self.parent = [0]          # union-find over cosets
        self.defined = 1
        self.queue: list[tuple[int, int]] = []

    def find(self, c: int) -> int:
        while self.parent[c] != c:
            self.parent[c] = self.parent[self.parent[c]]
            c = self.parent[c]
        return c

    def new_coset(self) -> int:
        if self.defined >= self.limit:
            raise CosetLimitExceeded("coset limit %d exceeded" % self.limit)
        self.table.append([None] * _NCOLS)
        self.parent.append(len(self.table) - 1)
        self.defined += 1
        return len(self.table) - 1

    def set_entry(self, c: int, col: int, d: int):
        c, d = self.find(c), self.find(d)
        cur = self.table[c][col]
        if cur is not None and self.find(cur) != d:
            self.queue.append((self.find(cur), d))
        else:
            self.table[c][col] = d
        cur_back = self.table[d][_inv_col(col)]
        if cur_back is not None and self.find(cur_back) != c:
            self.queue.append((self.find(cur_back), c))
        else:
            self.table[d][_inv_col(col)] = c
        self.process_coincidences()

    def process_coincidences(self):
        while self.queue:
            x, y = self.queue.pop()
            x, y = self.find(x), self.find(y)
            if x == y:
                continue
            if y < x:
                x, y = y, x
            self.parent[y] = x
            for col in range(_NCOLS):
                val = self.table[y][col]
                if val is None:
                    continue
                val = self.find(val)
                cur = self.table[x][col]
                if cur is None:
                    self.table[x][col] = val
                    back = self.table[val][_inv_col(col)]
                    if back is None:
                        self.table[val][_inv_col(col)] = x
                    elif self.find(back) != x:
                        self.queue.append((self.find(back), x))
                elif self.find(cur) != val:
                    self.queue.append((self.find(cur), val))

    def live(self) -> list[int]:
        return [c for c in range(len(self.table)) if self.find(c) == c]

    def step(self, c: int, col: int):
        val = self.table[self.find(c)][col]
        return None if val is None else self.find(val)


def _enumerate(pres: Presentation, coset_limit: int) -> _Table:
    tab = _Table(coset_limit)
    relator_cols = [_word_columns(r) for r in pres.relators]
    changed = True
    while changed:
        changed = False
        for c in range(len(tab.table)):
            if tab.find(c) != c:
                continue
            for cols in relator_cols:
                cur = c
                for idx, col in enumerate(cols):
                    nxt = tab.step(cur, col)
                    if nxt is None:
                        if idx == len(cols) - 1:
                            tab.set_entry(cur, col, tab.find(c))
                        else:
                            fresh = tab.new_coset()
                            tab.set_entry(cur, col, fresh)
                        changed = True
                        nxt = tab.step(cur, col)
                    cur = nxt
                    if tab.find(c) != c:
                        break
                if tab.find(c) != c:
                    break
            if tab.find(c) != c:
                continue
            for col in range(_NCOLS):
                if tab.step(c, col) is None:
                    fresh = tab.new_coset()
                    tab.set_entry(c, col, fresh)
                    changed = True
    return tab


def todd_coxeter(pres: Presentation, coset_limit: int = 10 ** 6) -> int:
    """Order of the presented group when enumeration closes within the
    limit.  Exceeding the limit raises and proves nothing about the group."""
    if coset_limit < 1:
        raise ValueError("coset_limit must be positive")
    return len(_enumerate(pres, coset_limit).live())


@dataclass
class MultiplicationTable:
    order: int
    table: list              # table[i][j] = index of element i * element j
    element_orders: list
    abelian_invariants: tuple

    def element_order_multiset(self):
        return tuple(sorted(self.element_orders))


def multiplication_table(pres: Presentation, coset_limit: int = 10 ** 6) -> MultiplicationTable:
    """Full multiplication table of a finite presented group; cosets of the
    trivial subgroup are the elements, words traced from the identity."""
    tab = _enumerate(pres, coset_limit)
    live = tab.live()
    index = {c: i for i, c in enumerate(live)}

    # reconstruct a defining word (column path from the identity) per coset
    paths = {tab.find(0): []}
    frontier = [tab.find(0)]
    while frontier:
        nxt = []
        for c in frontier:
            for col in range(_NCOLS):
                d = tab.step(c, col)
                if d is not None and d not in paths:
                    paths[d] = paths[c] + [col]
                    nxt.append(d)
        frontier = nxt
    if len(paths) != len(live):
        raise RuntimeError("coset table is not connected")

    def trace(c: int, cols) -> int:
        for col in cols:
            c = tab.step(c, col)
        return c

    table = [[index[trace(c, paths[d])] for d in live] for c in live]
    ident = index[tab.find(0)]
    orders = []
    for i in range(len(live)):
        power = i
        n = 1
        while power != ident:
            power = table[power][i]
            n += 1
        orders.append(n)

    from primpow.kernels import snf

    exponents = [list(r.abelianization()) for r in pres.relators]
    rank, divisors = snf(exponents)
    free_rank = 2 - rank
    invariants = tuple(d for d in divisors if d != 1) + ("Z",) * free_rank
    return MultiplicationTable(order=len(live), table=table,
                               element_orders=orders,
                               abelian_invariants=invariants)


def iso_order_exponent_check(ta: MultiplicationTable, tb: MultiplicationTable) -> bool:
    """Consistency with isomorphism: order, element-order multiset, and
    abelianization invariants all agree.  Not a full isomorphism test."""
    return (ta.order == tb.order
            and ta.element_order_multiset() == tb.element_order_multiset()
            and ta.abelian_invariants == tb.abelian_invariants)
