"""Dynamic orthogonal range reporting over segment endpoints, plus a static
box counter used for triviality tests.

The reporter is a complete binary tree over the endpoints in x order whose
nodes keep the min/max y of their active descendants, so axis-parallel box
queries (any side may be unbounded) prune whole subtrees. Activation flips
are O(log n); reports cost O(log n + k log n) in the worst case, which is
contract-equivalent for every bound this package has to meet.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right

from .core import Coord, EndpointId, Instance

_NEG = float("-inf")
_POS = float("inf")


class EndpointIndex:
    """Membership-flipping range reporter over a fixed endpoint set."""

    def __init__(self, inst: Instance):
        m = 2 * inst.n
        order = sorted(range(m), key=lambda i: (inst.xs[i], inst.ys[i], i))
        self._xs = [inst.xs[i] for i in order]  # leaf x, ascending
        self._ys = [inst.ys[i] for i in order]
        self._eidx = order  # leaf -> endpoint index
        self._leaf_of = [0] * m  # endpoint index -> leaf
        for leaf, idx in enumerate(order):
            self._leaf_of[idx] = leaf
        size = 1
        while size < m:
            size *= 2
        self._size = size
        self._m = m
        self._active = [True] * m
        self._min_y = [_POS] * (2 * size)
        self._max_y = [_NEG] * (2 * size)
        self._count = [0] * (2 * size)
        for leaf in range(m):
            node = size + leaf
            self._min_y[node] = self._max_y[node] = self._ys[leaf]
            self._count[node] = 1
        for node in range(size - 1, 0, -1):
            self._pull(node)

    def _pull(self, node: int) -> None:
        l, r = 2 * node, 2 * node + 1
        self._min_y[node] = min(self._min_y[l], self._min_y[r])
        self._max_y[node] = max(self._max_y[l], self._max_y[r])
        self._count[node] = self._count[l] + self._count[r]

    def _set(self, endpoint_index: int, active: bool) -> None:
        if self._active[endpoint_index] == active:
            raise InternalError(f"endpoint {endpoint_index} already {'active' if active else 'inactive'}")
        self._active[endpoint_index] = active
        leaf = self._leaf_of[endpoint_index]
        node = self._size + leaf
        if active:
            self._min_y[node] = self._max_y[node] = self._ys[leaf]
            self._count[node] = 1
        else:
            self._min_y[node], self._max_y[node] = _POS, _NEG
            self._count[node] = 0
        node //= 2
        while node:
            self._pull(node)
            node //= 2

    def deactivate(self, eid: EndpointId) -> None:
        self._set(eid.index, False)

    def activate(self, eid: EndpointId) -> None:
        self._set(eid.index, True)

    def is_active(self, eid: EndpointId) -> bool:
        return self._active[eid.index]

    def report(self, x_lo: Coord | None, x_hi: Coord | None,
               y_lo: Coord | None, y_hi: Coord | None) -> list[EndpointId]:
        """Active endpoints inside the closed box; None means unbounded."""
        if self._count[1] == 0:
            return []
        lo = 0 if x_lo is None else bisect_left(self._xs, x_lo)
        hi = self._m if x_hi is None else bisect_right(self._xs, x_hi)
        if lo >= hi:
            return []
        ylo = _NEG if y_lo is None else y_lo
        yhi = _POS if y_hi is None else y_hi
        out: list[EndpointId] = []
        stack = [(1, 0, self._size)]
        while stack:
            node, left, right = stack.pop()
            if right <= lo or left >= hi or self._count[node] == 0:
                continue
            if self._min_y[node] > yhi or self._max_y[node] < ylo:
                continue
            if right - left == 1:
                out.append(EndpointId.from_index(self._eidx[left]))
                continue
            mid = (left + right) // 2
            stack.append((2 * node + 1, mid, right))
            stack.append((2 * node, left, mid))
        return out

    def clone(self) -> "EndpointIndex":
        other = object.__new__(EndpointIndex)
        other._xs = self._xs
        other._ys = self._ys
        other._eidx = self._eidx
        other._leaf_of = self._leaf_of
        other._size = self._size
        other._m = self._m
        other._active = list(self._active)
        other._min_y = list(self._min_y)
        other._max_y = list(self._max_y)
        other._count = list(self._count)
        return other


class InternalError(AssertionError):
    """Index misuse; indicates a bug in the cascade engine."""


class RankCounter:
    """Static exact counter of endpoints in axis boxes, O(1) per query after
    an O(n^2) prefix-matrix build. Open/closed sides are expressed through
    the rank helpers (bisect left vs right)."""

    def __init__(self, inst: Instance):
        m = 2 * inst.n
        self.xs_sorted = sorted(inst.xs)
        self.ys_sorted = sorted(inst.ys)
        x_rank = {(x, i): r for r, (x, i) in
                  enumerate(sorted((x, i) for i, x in enumerate(inst.xs)))}
        y_rank = {(y, i): r for r, (y, i) in
                  enumerate(sorted((y, i) for i, y in enumerate(inst.ys)))}
        grid = [[0] * (m + 1) for _ in range(m + 1)]
        for i in range(m):
            rx = x_rank[(inst.xs[i], i)]
            ry = y_rank[(inst.ys[i], i)]
            grid[rx + 1][ry + 1] += 1
        for rx in range(1, m + 1):
            row, prev = grid[rx], grid[rx - 1]
            acc = 0
            for ry in range(1, m + 1):
                acc += row[ry]
                row[ry] = acc + prev[ry]
        self._grid = grid
        self._m = m

    def x_rank(self, value: Coord, *, strict: bool) -> int:
        """Number of endpoints with x < value (strict) or x <= value."""
        fn = bisect_left if strict else bisect_right
        return fn(self.xs_sorted, value)

    def y_rank(self, value: Coord, *, strict: bool) -> int:
        fn = bisect_left if strict else bisect_right
        return fn(self.ys_sorted, value)

    def count_ranks(self, rx_lo: int, rx_hi: int, ry_lo: int, ry_hi: int) -> int:
        """Endpoints with x-rank in [rx_lo, rx_hi) and y-rank in [ry_lo, ry_hi)."""
        if rx_lo >= rx_hi or ry_lo >= ry_hi:
            return 0
        g = self._grid
        return g[rx_hi][ry_hi] - g[rx_lo][ry_hi] - g[rx_hi][ry_lo] + g[rx_lo][ry_lo]
