"""Tree values, the extremal tree families and isomorphism codes.

Constructed trees number their vertices spine first (for ``build_tstar``),
then branches depth-first in preorder, so the edge lists are stable across
runs.
"""

from __future__ import annotations

import enum
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import chain
from typing import Optional, Sequence

from .errors import InvariantViolation, ParameterError

__all__ = [
    "Tree",
    "RootedTree",
    "Terminal",
    "DigitalExpansion",
    "complete_dary",
    "complete_dary_size",
    "bn_tree",
    "bn_size",
    "digital_expansion",
    "build_tstar",
    "canonical_code",
    "canonical_form",
    "canonicalize",
    "code_from_adjacency",
    "centers",
    "path_tree",
    "star_tree",
    "tree_from_code",
    "is_isomorphic",
]


@dataclass(frozen=True)
class Tree:
    """An unlabeled-up-to-relabeling tree on vertices ``0..n-1``.

    Validated on construction: ``n - 1`` distinct edges, no loops, connected.
    ``n == 0`` is the empty graph.
    """

    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        n = self.n
        if not isinstance(n, int) or n < 0:
            raise ParameterError(f"vertex count must be a non-negative int, got {n!r}")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        if n == 0:
            if edges:
                raise ParameterError("the empty tree has no edges")
            return
        if len(edges) != n - 1:
            kind = "disconnected" if len(edges) < n - 1 else "cyclic"
            raise ParameterError(
                f"{kind}: a tree on {n} vertices needs {n - 1} edges, got {len(edges)}"
            )
        seen = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u}, {v}) has a vertex outside [0, {n})")
            if u == v:
                raise ParameterError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ParameterError(f"duplicate edge ({u}, {v})")
            seen.add(key)
        # n - 1 edges + connected  <=>  tree
        if len(_bfs_order(self.adjacency, 0)) != n:
            raise ParameterError("disconnected: edge list does not span all vertices")

    @classmethod
    def _unchecked(cls, n: int, edges: tuple[tuple[int, int], ...]) -> "Tree":
        """Skip validation; only for edge lists that are trees by construction."""
        t = object.__new__(cls)
        object.__setattr__(t, "n", n)
        object.__setattr__(t, "edges", edges)
        return t

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(x) for x in nbrs)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def relabel(self, order: Sequence[int]) -> "Tree":
        """Return the tree whose vertex ``i`` is this tree's ``order[i]``."""
        if sorted(order) != list(range(self.n)):
            raise ParameterError("order must be a permutation of the vertices")
        pos = {old: new for new, old in enumerate(order)}
        edges = sorted(
            tuple(sorted((pos[u], pos[v]))) for u, v in self.edges  # type: ignore[misc]
        )
        return Tree(self.n, tuple(edges))


@dataclass(frozen=True)
class RootedTree:
    """A tree with a distinguished root; ``root`` is None only for C_0."""

    tree: Tree
    root: Optional[int]

    def __post_init__(self) -> None:
        if self.tree.n == 0:
            if self.root is not None:
                raise ParameterError("the empty tree has no root")
        elif self.root is None or not 0 <= self.root < self.tree.n:
            raise ParameterError(f"root {self.root!r} outside [0, {self.tree.n})")

    @property
    def n(self) -> int:
        return self.tree.n


def path_tree(n: int) -> Tree:
    return Tree(n, tuple((i, i + 1) for i in range(n - 1)))


def star_tree(n: int) -> Tree:
    """K_{1,n-1} with the centre at vertex 0."""
    return Tree(n, tuple((0, i) for i in range(1, n)))


def _bfs_order(adjacency: Sequence[Sequence[int]], root: int) -> list[int]:
    order = [root]
    seen = {root}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in adjacency[v]:
            if w not in seen:
                seen.add(w)
                order.append(w)
                queue.append(w)
    return order


class _Builder:
    """Accumulates edges while handing out fresh vertex ids."""

    def __init__(self) -> None:
        self.n = 0
        self.edges: list[tuple[int, int]] = []

    def vertex(self, parent: Optional[int] = None) -> int:
        v = self.n
        self.n += 1
        if parent is not None:
            self.edges.append((parent, v))
        return v

    def complete(self, d: int, h: int, parent: Optional[int] = None) -> Optional[int]:
        """Attach C_h below ``parent`` (preorder numbering); returns its root."""
        if h == 0:
            return None
        root = self.vertex(parent)
        self._fill(root, d, h)
        return root

    def _fill(self, v: int, d: int, h: int) -> None:
        # template vertex 0 is v; template vertex i > 0 becomes self.n + i - 1
        base = self.n - 1
        self.edges.extend([(v if p == 0 else p + base, c + base) for p, c in _complete_template(d, h)])
        self.n += complete_dary_size(d, h) - 1

    def build(self) -> Tree:
        # every vertex but the first gets exactly one parent with a smaller id
        return Tree._unchecked(self.n, tuple(self.edges))


@lru_cache(maxsize=None)
def _complete_template(d: int, h: int) -> tuple[tuple[int, int], ...]:
    """Preorder (parent, child) edges of C_h with root 0."""
    edges: list[tuple[int, int]] = []
    nxt = 1

    def fill(v: int, h: int) -> None:
        nonlocal nxt
        if h <= 1:
            return
        for _ in range(d):
            c = nxt
            nxt += 1
            edges.append((v, c))
            fill(c, h - 1)

    fill(0, h)
    return tuple(edges)


def _check_d(d: int) -> None:
    if not isinstance(d, int) or d < 2:
        raise ParameterError(f"branching parameter d must be an int >= 2, got {d!r}")


def complete_dary_size(d: int, h: int) -> int:
    """Vertex count (d^h - 1)/(d - 1) of C_h."""
    return (d**h - 1) // (d - 1)


def complete_dary(d: int, h: int) -> RootedTree:
    """The complete d-ary tree C_h: C_0 empty, C_1 a vertex, C_h a root over d copies of C_{h-1}."""
    _check_d(d)
    if not isinstance(h, int) or h < 0:
        raise ParameterError(f"height index h must be an int >= 0, got {h!r}")
    b = _Builder()
    root = b.complete(d, h)
    return RootedTree(b.build(), root)


def bn_size(level: int) -> int:
    return 3 * 2 ** (level + 1) - 2


def bn_tree(level: int) -> Tree:
    """Apex vertex joined to the roots of three disjoint binary C_{level+1}.

    Has ``3 * 2**(level+1) - 2`` vertices; ``bn_tree(0)`` is K_{1,3}.
    """
    if not isinstance(level, int) or level < 0:
        raise ParameterError(f"level must be an int >= 0, got {level!r}")
    b = _Builder()
    apex = b.vertex()
    for _ in range(3):
        b.complete(2, level + 1, apex)
    return b.build()


# ---------------------------------------------------------------------------
# digital expansion and T*_{n,d}
# ---------------------------------------------------------------------------


class Terminal(enum.Enum):
    """Branch pattern at the last spine vertex."""

    ALL_C_PREV = "all_c_prev"  # d copies of C_{l-1}, a_l = 1
    ALL_C = "all_c"  # d copies of C_l, a_l = d
    MIXED = "mixed"  # q copies of C_{l+1}, r of C_{l+2}, rest C_l


@dataclass(frozen=True)
class DigitalExpansion:
    """Coefficients a_0..a_l with sum a_k d^k = (d-1)n + 1.

    ``r[k]`` counts the C_{k+2} branches at spine level ``k < l``;
    ``q_l``/``r_l`` are only meaningful for ``Terminal.MIXED``.
    """

    d: int
    a: tuple[int, ...]
    r: tuple[int, ...]
    terminal: Terminal
    q_l: int = 0
    r_l: int = 0

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.a) - 1

    @property
    def value(self) -> int:
        return sum(ak * self.d**k for k, ak in enumerate(self.a))

    @property
    def n(self) -> int:
        return (self.value - 1) // (self.d - 1)

    def check(self) -> None:
        """Raise InvariantViolation if any digit rule is broken."""
        d, l = self.d, self.l
        if len(self.r) != l:
            raise InvariantViolation(f"expected {l} branch counts, got {len(self.r)}")
        for k, (ak, rk) in enumerate(zip(self.a, self.r)):
            if not 0 <= rk <= d - 1 or ak != (d - 1) * (1 + (d + 1) * rk):
                raise InvariantViolation(f"digit a_{k}={ak} with r_{k}={rk} is not admissible")
        top = self.a[-1]
        if self.terminal is Terminal.ALL_C_PREV:
            ok = top == 1 and l >= 1
        elif self.terminal is Terminal.ALL_C:
            ok = top == d
        else:
            q, r = self.q_l, self.r_l
            ok = q >= 2 and r >= 0 and q + r <= d and top == d + (d - 1) * q + (d * d - 1) * r
        if not ok or top <= 0:
            raise InvariantViolation(f"leading coefficient {top} does not match {self.terminal}")
        if (self.value - 1) % (d - 1):
            raise InvariantViolation(f"sum {self.value} is not (d-1)n + 1")


def _leading(v: int, d: int, k: int) -> Optional[tuple[Terminal, int, int]]:
    """Classify ``v`` as an admissible leading coefficient at index ``k``."""
    if v == 1:
        # d copies of C_{k-1} need k >= 1
        return (Terminal.ALL_C_PREV, 0, 0) if k >= 1 else None
    if v == d:
        return (Terminal.ALL_C, 0, 0)
    rest = v - d
    if rest <= 0 or rest % (d - 1):
        return None
    s = rest // (d - 1)  # s = q + (d+1) r with 2 <= q <= d
    r, q = divmod(s, d + 1)
    if q >= 2 and q + r <= d:
        return (Terminal.MIXED, q, r)
    return None


def _all_expansions(n: int, d: int) -> list[DigitalExpansion]:
    # The residue of the remaining value mod d forces r_k, so the only
    # freedom is where to stop; collect every admissible stopping point.
    found = []
    v = (d - 1) * n + 1
    digits: list[int] = []
    rs: list[int] = []
    k = 0
    while v > 0:
        lead = _leading(v, d, k)
        if lead is not None:
            kind, q, r = lead
            found.append(DigitalExpansion(d, tuple(digits) + (v,), tuple(rs), kind, q, r))
        rk = (-v - 1) % d
        ak = (d - 1) * (1 + (d + 1) * rk)
        if v - ak <= 0:
            break
        if (v - ak) % d:
            raise InvariantViolation(f"digit rule failed to divide at n={n}, d={d}, k={k}")
        digits.append(ak)
        rs.append(rk)
        v = (v - ak) // d
        k += 1
    return found


def digital_expansion(n: int, d: int) -> DigitalExpansion:
    """The unique expansion of (d-1)n + 1 describing T*_{n,d}.

    Raises InvariantViolation if zero or several expansions exist.
    """
    _check_d(d)
    if not isinstance(n, int) or n < 1:
        raise ParameterError(f"vertex count must be an int >= 1, got {n!r}")
    found = _all_expansions(n, d)
    if len(found) != 1:
        raise InvariantViolation(
            f"expected exactly one digital expansion for n={n}, d={d}, found {len(found)}: "
            + "; ".join(str(e.a) for e in found)
        )
    exp = found[0]
    exp.check()
    if exp.n != n:
        raise InvariantViolation(f"expansion of n={n}, d={d} sums to n={exp.n}")
    return exp


def _branch_heights(exp: DigitalExpansion) -> list[list[int]]:
    """Heights of the complete branches hanging off each spine vertex."""
    d, l = exp.d, exp.l
    out = []
    for k, rk in enumerate(exp.r):
        out.append([k + 2] * rk + [k] * (d - 1 - rk))
    if exp.terminal is Terminal.ALL_C_PREV:
        out.append([l - 1] * d)
    elif exp.terminal is Terminal.ALL_C:
        out.append([l] * d)
    else:
        q, r = exp.q_l, exp.r_l
        out.append([l + 1] * q + [l + 2] * r + [l] * (d - q - r))
    return out


def build_tstar(n: int, d: int) -> Tree:
    """The minimal-energy tree T*_{n,d}: a spine v_0..v_l with complete d-ary branches."""
    exp = digital_expansion(n, d)
    b = _Builder()
    spine = [b.vertex()]
    for _ in range(exp.l):
        spine.append(b.vertex(spine[-1]))
    for v, heights in zip(spine, _branch_heights(exp)):
        for h in heights:
            b.complete(d, h, v)
    tree = b.build()
    if tree.n != n:
        raise InvariantViolation(f"T*_{{{n},{d}}} was built with {tree.n} vertices")
    top = max(Counter(chain.from_iterable(tree.edges)).values(), default=0)
    if top > d + 1:
        raise InvariantViolation(f"T*_{{{n},{d}}} has max degree {top} > {d + 1}")
    return tree


# ---------------------------------------------------------------------------
# canonical codes
# ---------------------------------------------------------------------------


def centers(tree: Tree) -> list[int]:
    """The one or two central vertices, found by repeated leaf stripping."""
    if tree.n == 0:
        raise ParameterError("the empty tree has no center")
    return _centers(tree.adjacency)


def _centers(adj: Sequence[Sequence[int]]) -> list[int]:
    n = len(adj)
    if n <= 2:
        return list(range(n))
    deg = [len(a) for a in adj]
    layer = [v for v in range(n) if deg[v] == 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return sorted(layer)


def _rooted_codes(adj: Sequence[Sequence[int]], root: int) -> tuple[list[str], list[list[int]]]:
    """AHU strings for every subtree when rooted at ``root``, plus each
    vertex's children sorted by code."""
    n = len(adj)
    parent = [-1] * n
    parent[root] = root
    order = [root]
    for v in order:
        for w in adj[v]:
            if parent[w] == -1:
                parent[w] = v
                order.append(w)
    code = [""] * n
    kids: list[list[int]] = [[]] * n
    for v in reversed(order):
        pv = parent[v]
        ch = [w for w in adj[v] if w != pv]
        if ch:
            ch.sort(key=code.__getitem__)
            kids[v] = ch
            code[v] = "(" + "".join([code[w] for w in ch]) + ")"
        else:
            code[v] = "()"
    return code, kids


def _best_root(adj: Sequence[Sequence[int]]) -> tuple[str, int, list[list[int]]]:
    best = None
    for c in _centers(adj):
        code, kids = _rooted_codes(adj, c)
        if best is None or code[c] < best[0]:
            best = (code[c], c, kids)
    assert best is not None
    return best


def code_from_adjacency(adj: Sequence[Sequence[int]]) -> str:
    """:func:`canonical_code` for a trusted adjacency list (no validation)."""
    return _best_root(adj)[0]


def canonical_code(tree: Tree) -> str:
    """Isomorphism-invariant code: AHU parenthesis string rooted at the center.

    For bicentral trees the lexicographically smaller orientation is used.
    """
    if tree.n == 0:
        raise ParameterError("canonical_code is undefined for the empty tree")
    return _best_root(tree.adjacency)[0]


def canonical_form(tree: Tree) -> Tree:
    """Relabel ``tree`` so isomorphic inputs give identical edge lists."""
    return canonicalize(tree)[1]


def canonicalize(tree: Tree) -> tuple[str, Tree]:
    """Canonical code and canonically relabelled tree in one pass."""
    if tree.n == 0:
        raise ParameterError("the empty tree has no canonical form")
    code, root, kids = _best_root(tree.adjacency)
    order = []
    stack = [root]
    while stack:
        v = stack.pop()
        order.append(v)
        stack.extend(reversed(kids[v]))
    return code, tree.relabel(order)


def tree_from_code(code: str) -> Tree:
    """Inverse of :func:`canonical_code` up to labeling (preorder numbering)."""
    edges = []
    stack: list[int] = []
    n = 0
    for ch in code:
        if ch == "(":
            if stack:
                edges.append((stack[-1], n))
            stack.append(n)
            n += 1
        elif ch == ")":
            if not stack:
                raise ParameterError("unbalanced canonical code")
            stack.pop()
        else:
            raise ParameterError(f"unexpected character {ch!r} in canonical code")
    if stack:
        raise ParameterError("unbalanced canonical code")
    return Tree(n, tuple(edges))


def is_isomorphic(a: Tree, b: Tree) -> bool:
    if a.n != b.n:
        return False
    if a.n == 0:
        return True
    return canonical_code(a) == canonical_code(b)
