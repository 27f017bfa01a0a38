"""Group models with solvable word problems, and Cayley balls with horosphere traces.

A word is a tuple of non-zero ints: ``+i`` is the i-th generator (1-based),
``-i`` its inverse. Every model's normal form is a geodesic word for the
standard generating set, so normal-form length is word length.

Supported families: free groups, free abelian groups, free products of
these, and finite groups given by generator permutation tables.
"""

from __future__ import annotations

import json
import re
import string
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from math import comb
from pathlib import Path
from typing import Hashable, Iterable, Sequence

import numpy as np

from .errors import InputError, ResourceError, UnsupportedOperationError
from .graph import UnitGraph

Word = tuple  # tuple[int, ...]

DEFAULT_VERTEX_BUDGET = 5_000_000


@dataclass(frozen=True)
class SubgroupSpec:
    name: str
    generator_words: tuple[Word, ...]

    def __post_init__(self):
        if not self.generator_words:
            raise InputError(f"subgroup {self.name!r} needs at least one generator")


class GroupModel(ABC):
    """A finitely generated group with a computable normal form."""

    family: str = ""

    def __init__(self, names: Sequence[str]):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise InputError("generator names must be distinct")

    @property
    def rank(self) -> int:
        return len(self.names)

    def check(self, word: Iterable[int]) -> Word:
        w = tuple(int(x) for x in word)
        for x in w:
            if x == 0 or abs(x) > self.rank:
                raise InputError(f"invalid letter {x} for a group of rank {self.rank}")
        return w

    @abstractmethod
    def normal_form(self, word: Iterable[int]) -> Word: ...

    def right_multiply(self, nf: Word, letter: int) -> Word:
        """``nf * letter`` for a word already in normal form."""
        return self.normal_form(nf + (letter,))

    def multiply(self, u: Word, v: Word) -> Word:
        return self.normal_form(tuple(u) + tuple(v))

    def inverse(self, w: Word) -> Word:
        return self.normal_form(tuple(-x for x in reversed(tuple(w))))

    def length(self, w: Word) -> int:
        return len(self.normal_form(w))

    @abstractmethod
    def contains(self, sub: SubgroupSpec, w: Word) -> bool:
        """Membership of ``w`` in the subgroup generated by ``sub``."""

    @abstractmethod
    def coset_key(self, sub: SubgroupSpec, nf: Word) -> Hashable:
        """Canonical label of the left coset ``nf * <sub>``."""

    def sphere_sizes(self, radius: int) -> list[int] | None:
        """Number of elements of each word length 0..radius, when known in closed form."""
        return None

    def spec(self) -> dict:
        raise NotImplementedError

    # -- text I/O ---------------------------------------------------------

    def format(self, w: Word) -> str:
        if not w:
            return "e"
        single = all(len(n) == 1 and n.islower() for n in self.names)
        if single:
            return "".join(self.names[x - 1] if x > 0 else self.names[-x - 1].upper() for x in w)
        return " ".join(self.names[abs(x) - 1] + ("" if x > 0 else "^-1") for x in w)

    def parse(self, text: str) -> Word:
        """Parse ``"a b^-1 c^3"``, ``"abB"`` (uppercase inverts) or ``"e"``."""
        text = text.strip()
        if text in ("", "e", "1"):
            return ()
        index = {n: i + 1 for i, n in enumerate(self.names)}
        out: list[int] = []
        for tok in text.split():
            m = re.fullmatch(r"(.+?)\^(-?\d+)", tok)
            if m and m.group(1) in index:
                k = int(m.group(2))
                g = index[m.group(1)]
                out.extend([g if k > 0 else -g] * abs(k))
            elif tok in index:
                out.append(index[tok])
            else:
                pos = 0
                for m in re.finditer(r"([A-Za-z])(?:\^(-?\d+))?", tok):
                    ch, k = m.group(1), int(m.group(2) or 1)
                    if m.start() != pos:
                        break
                    pos = m.end()
                    if ch in index:
                        g = index[ch]
                    elif ch.isupper() and ch.lower() in index:
                        g = -index[ch.lower()]
                    else:
                        raise InputError(f"cannot parse word {text!r}")
                    out.extend([g if k > 0 else -g] * abs(k))
                if pos != len(tok):
                    raise InputError(f"cannot parse word {text!r}")
        return self.check(out)

    def subgroup(self, name: str, generators: Sequence[Word | str]) -> SubgroupSpec:
        words = tuple(self.normal_form(self.parse(g) if isinstance(g, str) else g) for g in generators)
        return SubgroupSpec(name, words)

    def power(self, w: Word, k: int) -> Word:
        base = tuple(w) if k >= 0 else tuple(-x for x in reversed(tuple(w)))
        return self.normal_form(base * abs(k))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({', '.join(self.names)})"


def _default_names(k: int, offset: int = 0) -> list[str]:
    letters = string.ascii_lowercase
    if offset + k <= len(letters):
        return list(letters[offset:offset + k])
    return [f"x{i}" for i in range(offset + 1, offset + k + 1)]


# -- free groups -------------------------------------------------------------

class _Stallings:
    """Folded core graph of a finitely generated subgroup of a free group."""

    def __init__(self, words: Iterable[Word]):
        self.adj: list[dict[int, set[int]]] = [{}]
        for w in words:
            cur = 0
            for i, x in enumerate(w):
                nxt = 0 if i == len(w) - 1 else self._new()
                self.adj[cur].setdefault(x, set()).add(nxt)
                self.adj[nxt].setdefault(-x, set()).add(cur)
                cur = nxt
        self.step = self._fold()

    def _new(self) -> int:
        self.adj.append({})
        return len(self.adj) - 1

    def _fold(self) -> dict[tuple[int, int], int]:
        adj = self.adj
        parent = list(range(len(adj)))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        changed = True
        while changed:
            changed = False
            for u in range(len(adj)):
                if find(u) != u:
                    continue
                for x in list(adj[u]):
                    roots = {find(t) for t in adj[u].get(x, ())}
                    adj[u][x] = roots
                    if len(roots) > 1:
                        keep = min(roots)
                        for r in roots - {keep}:
                            parent[r] = keep
                            for y, ts in adj[r].items():
                                adj[keep].setdefault(y, set()).update(ts)
                            adj[r] = {}
                        changed = True
        step = {}
        for u in range(len(adj)):
            if find(u) == u:
                for x, ts in adj[u].items():
                    (t,) = {find(t) for t in ts}
                    step[(u, x)] = t
        return step

    def read(self, w: Word) -> tuple[int, Word]:
        """Follow ``w`` from the base vertex; return the stop vertex and unread suffix."""
        cur = 0
        for i, x in enumerate(w):
            nxt = self.step.get((cur, x))
            if nxt is None:
                return cur, tuple(w[i:])
            cur = nxt
        return cur, ()


class FreeGroup(GroupModel):
    family = "free"

    def __init__(self, rank: int, names: Sequence[str] | None = None):
        if rank < 1:
            raise InputError("free group rank must be >= 1")
        super().__init__(names or _default_names(rank))
        if len(self.names) != rank:
            raise InputError("wrong number of generator names")
        self._cores: dict[SubgroupSpec, _Stallings] = {}

    def normal_form(self, word):
        out: list[int] = []
        for x in self.check(word):
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
        return tuple(out)

    def right_multiply(self, nf, letter):
        if nf and nf[-1] == -letter:
            return nf[:-1]
        return nf + (letter,)

    def _core(self, sub: SubgroupSpec) -> _Stallings:
        core = self._cores.get(sub)
        if core is None:
            core = self._cores[sub] = _Stallings(self.normal_form(w) for w in sub.generator_words)
        return core

    def contains(self, sub, w):
        return self._core(sub).read(self.normal_form(w)) == (0, ())

    def coset_key(self, sub, nf):
        # gH <-> right coset H g^-1 <-> vertex of the Schreier graph reached by g^-1.
        return self._core(sub).read(self.inverse(nf))

    def sphere_sizes(self, radius):
        k = self.rank
        return [1] + [2 * k * (2 * k - 1) ** (n - 1) for n in range(1, radius + 1)]

    def spec(self):
        return {"family": "free", "rank": self.rank, "generators": list(self.names)}


# -- free abelian groups -----------------------------------------------------

def _hermite_rows(vectors: list[list[int]]) -> list[list[int]]:
    """Row-echelon integer basis (positive pivots, increasing pivot columns) of a lattice."""
    rows = [list(v) for v in vectors if any(v)]
    basis: list[list[int]] = []
    ncols = len(vectors[0]) if vectors else 0
    col = 0
    while rows and col < ncols:
        active = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            piv = active[0]
            new = [piv]
            for r in active[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                if r[col] != 0:
                    new.append(r)
                elif any(r):
                    rest.append(r)
            active = new
        if active:
            piv = active[0]
            if piv[col] < 0:
                piv = [-a for a in piv]
            basis.append(piv)
        rows = rest
        col += 1
    return basis


class FreeAbelianGroup(GroupModel):
    family = "free_abelian"

    def __init__(self, rank: int, names: Sequence[str] | None = None):
        if rank < 1:
            raise InputError("free abelian rank must be >= 1")
        super().__init__(names or _default_names(rank))
        if len(self.names) != rank:
            raise InputError("wrong number of generator names")
        self._lattices: dict[SubgroupSpec, list[list[int]]] = {}

    def vector(self, word) -> list[int]:
        v = [0] * self.rank
        for x in self.check(word):
            v[abs(x) - 1] += 1 if x > 0 else -1
        return v

    def from_vector(self, v: Sequence[int]) -> Word:
        out: list[int] = []
        for i, e in enumerate(v):
            out.extend([i + 1 if e > 0 else -(i + 1)] * abs(e))
        return tuple(out)

    def normal_form(self, word):
        return self.from_vector(self.vector(word))

    def _lattice(self, sub):
        basis = self._lattices.get(sub)
        if basis is None:
            basis = self._lattices[sub] = _hermite_rows([self.vector(w) for w in sub.generator_words])
        return basis

    def _reduce(self, sub, v: list[int]) -> tuple[int, ...]:
        v = list(v)
        for row in self._lattice(sub):
            c = next(i for i, a in enumerate(row) if a)
            q = v[c] // row[c]
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return tuple(v)

    def contains(self, sub, w):
        return not any(self._reduce(sub, self.vector(w)))

    def coset_key(self, sub, nf):
        return self._reduce(sub, self.vector(nf))

    def sphere_sizes(self, radius):
        n = self.rank
        ball = [sum(2 ** i * comb(n, i) * comb(r, i) for i in range(n + 1)) for r in range(radius + 1)]
        return [ball[0]] + [ball[r] - ball[r - 1] for r in range(1, radius + 1)]

    def spec(self):
        return {"family": "free_abelian", "rank": self.rank, "generators": list(self.names)}


# -- free products -----------------------------------------------------------

def _series_inverse(a: list[int], n: int) -> list[int]:
    """Power-series inverse of ``a`` (a[0] == 1) truncated to n+1 terms, exact ints."""
    inv = [0] * (n + 1)
    inv[0] = 1
    for k in range(1, n + 1):
        inv[k] = -sum(a[j] * inv[k - j] for j in range(1, min(k, len(a) - 1) + 1))
    return inv


class FreeProduct(GroupModel):
    family = "free_product"

    def __init__(self, factors: Sequence[GroupModel]):
        if len(factors) < 2:
            raise InputError("a free product needs at least two factors")
        self.factors = tuple(factors)
        names: list[str] = []
        self._offset: list[int] = []
        for f in self.factors:
            self._offset.append(len(names))
            names.extend(f.names)
        super().__init__(names)
        self._factor_of = {}
        for i, f in enumerate(self.factors):
            for j in range(f.rank):
                self._factor_of[self._offset[i] + j + 1] = i

    def _local(self, x: int) -> tuple[int, int]:
        i = self._factor_of[abs(x)]
        loc = abs(x) - self._offset[i]
        return i, loc if x > 0 else -loc

    def _globalize(self, i: int, w: Word) -> Word:
        off = self._offset[i]
        return tuple(x + off if x > 0 else x - off for x in w)

    def syllables(self, nf: Word) -> list[tuple[int, Word]]:
        out: list[tuple[int, list[int]]] = []
        for x in nf:
            i, loc = self._local(x)
            if out and out[-1][0] == i:
                out[-1][1].append(loc)
            else:
                out.append((i, [loc]))
        return [(i, tuple(w)) for i, w in out]

    def _assemble(self, syl: list[tuple[int, Word]]) -> Word:
        out: list[int] = []
        for i, w in syl:
            out.extend(self._globalize(i, w))
        return tuple(out)

    def normal_form(self, word):
        stack: list[tuple[int, Word]] = []
        for x in self.check(word):
            i, loc = self._local(x)
            if stack and stack[-1][0] == i:
                merged = self.factors[i].right_multiply(stack[-1][1], loc)
                if merged:
                    stack[-1] = (i, merged)
                else:
                    stack.pop()
            else:
                stack.append((i, (loc,)))
        return self._assemble(stack)

    def right_multiply(self, nf, letter):
        i, loc = self._local(letter)
        k = len(nf)
        while k > 0 and self._factor_of[abs(nf[k - 1])] == i:
            k -= 1
        if k == len(nf):
            return nf + (letter,)
        off = self._offset[i]
        last = tuple(x - off if x > 0 else x + off for x in nf[k:])
        merged = self.factors[i].right_multiply(last, loc)
        return nf[:k] + self._globalize(i, merged)

    def _factor_subgroup(self, sub: SubgroupSpec) -> tuple[int, SubgroupSpec]:
        home = None
        local_words = []
        for w in sub.generator_words:
            syl = self.syllables(self.normal_form(w))
            if len(syl) != 1:
                raise UnsupportedOperationError(
                    f"subgroup {sub.name!r}: only subgroups of a single factor are supported")
            i, lw = syl[0]
            if home is not None and i != home:
                raise UnsupportedOperationError(
                    f"subgroup {sub.name!r}: generators lie in different factors")
            home = i
            local_words.append(lw)
        return home, SubgroupSpec(sub.name, tuple(local_words))

    def contains(self, sub, w):
        i, local = self._factor_subgroup(sub)
        syl = self.syllables(self.normal_form(w))
        if not syl:
            return True
        return len(syl) == 1 and syl[0][0] == i and self.factors[i].contains(local, syl[0][1])

    def coset_key(self, sub, nf):
        i, local = self._factor_subgroup(sub)
        syl = self.syllables(nf)
        if syl and syl[-1][0] == i:
            prefix, last = syl[:-1], syl[-1][1]
        else:
            prefix, last = syl, ()
        return (self._assemble(prefix), self.factors[i].coset_key(local, last))

    def sphere_sizes(self, radius):
        inv_sum = [0] * (radius + 1)
        for f in self.factors:
            sizes = f.sphere_sizes(radius)
            if sizes is None:
                return None
            inv = _series_inverse(sizes, radius)
            inv_sum = [a + b for a, b in zip(inv_sum, inv)]
        inv_sum[0] -= len(self.factors) - 1
        return _series_inverse(inv_sum, radius)

    def spec(self):
        return {"family": "free_product", "factors": [f.spec() for f in self.factors]}


# -- finite groups from permutation tables ------------------------------------

class PermutationGroup(GroupModel):
    """Finite group given by the right action of each generator on element ids.

    ``perms[i][v]`` is the id of ``v * s_i``. Element 0 is the identity unless
    ``identity`` says otherwise. Subgroup membership needs an explicit table.
    """

    family = "external"

    def __init__(self, perms: Sequence[Sequence[int]], names: Sequence[str] | None = None,
                 identity: int = 0, membership: dict[str, Iterable[int]] | None = None):
        super().__init__(names or _default_names(len(perms)))
        self.perms = [np.asarray(p, dtype=np.int64) for p in perms]
        order = self.perms[0].shape[0]
        for p in self.perms:
            if p.shape[0] != order or sorted(p.tolist()) != list(range(order)):
                raise InputError("each generator table must be a permutation of 0..n-1")
        self.inverse_perms = [np.argsort(p) for p in self.perms]
        self.identity = identity
        self.membership = {k: frozenset(int(x) for x in v) for k, v in (membership or {}).items()}
        # Shortlex geodesic word for every element.
        self._word: dict[int, Word] = {identity: ()}
        frontier = [identity]
        while frontier:
            nxt = []
            for v in frontier:
                for x in self._letters():
                    u = self.act(v, x)
                    if u not in self._word:
                        self._word[u] = self._word[v] + (x,)
                        nxt.append(u)
            frontier = nxt
        if len(self._word) != order:
            raise InputError("generators do not act transitively on the element table")

    def _letters(self):
        for i in range(1, self.rank + 1):
            yield i
            yield -i

    def act(self, v: int, x: int) -> int:
        return int(self.perms[x - 1][v]) if x > 0 else int(self.inverse_perms[-x - 1][v])

    def element(self, word) -> int:
        v = self.identity
        for x in self.check(word):
            v = self.act(v, x)
        return v

    def normal_form(self, word):
        return self._word[self.element(word)]

    def _table(self, sub):
        table = self.membership.get(sub.name)
        if table is None:
            raise UnsupportedOperationError(
                f"subgroup {sub.name!r}: external family needs a membership table")
        return table

    def contains(self, sub, w):
        return self.element(w) in self._table(sub)

    def coset_key(self, sub, nf):
        g = self._word[self.element(nf)]
        return min(self.element(g + self._word[h]) for h in self._table(sub))

    def sphere_sizes(self, radius):
        counts = [0] * (radius + 1)
        for w in self._word.values():
            if len(w) <= radius:
                counts[len(w)] += 1
        return counts

    def spec(self):
        return {"family": "external", "generators": list(self.names),
                "permutations": [p.tolist() for p in self.perms], "identity": self.identity,
                "membership": {k: sorted(v) for k, v in self.membership.items()}}


# -- spec files --------------------------------------------------------------

def model_from_spec(spec: dict, base_dir: str | Path | None = None, _offset: int = 0) -> GroupModel:
    """Build a model from the JSON group-spec dictionary (subgroups are ignored here)."""
    fam = spec.get("family")
    names = spec.get("generators")
    if fam == "free":
        k = int(spec["rank"])
        return FreeGroup(k, names or _default_names(k, _offset))
    if fam == "free_abelian":
        k = int(spec["rank"])
        return FreeAbelianGroup(k, names or _default_names(k, _offset))
    if fam == "free_product":
        factors = []
        off = _offset
        for f in spec["factors"]:
            m = model_from_spec(f, base_dir, off)
            off += m.rank
            factors.append(m)
        return FreeProduct(factors)
    if fam == "external":
        perms = spec.get("permutations")
        if perms is None and "table" in spec:
            path = Path(base_dir or ".") / spec["table"]
            perms = json.loads(path.read_text())
        if perms is None:
            raise InputError("external family needs 'permutations' or 'table'")
        if isinstance(perms, dict):
            names = list(perms)
            perms = [perms[n] for n in names]
        return PermutationGroup(perms, names, int(spec.get("identity", 0)), spec.get("membership"))
    raise InputError(f"unknown group family {fam!r}")


def load_group_spec(spec: dict | str | Path) -> tuple[GroupModel, list[SubgroupSpec]]:
    """Model and subgroup list from a spec dict or a path to a JSON spec file."""
    base_dir = None
    if not isinstance(spec, dict):
        base_dir = Path(spec).parent
        spec = json.loads(Path(spec).read_text())
    model = model_from_spec(spec, base_dir)
    subs = []
    for s in spec.get("subgroups", []):
        gens = s["generators"]
        subs.append(model.subgroup(s["name"], gens))
    return model, subs


def group_spec(model: GroupModel, subgroups: Sequence[SubgroupSpec] = ()) -> dict:
    out = model.spec()
    out["subgroups"] = [{"name": s.name, "generators": [model.format(w) for w in s.generator_words]}
                        for s in subgroups]
    return out


# -- Cayley balls ------------------------------------------------------------

@dataclass(eq=False)
class CayleyBall:
    """Finite region of a Cayley graph (a ball, or a union of balls around centers).

    ``generating_set`` lists the moves actually used as edges; it extends the
    model's generators with any subgroup generator that is not a single letter.
    """

    model: GroupModel
    graph: UnitGraph
    radius: int
    origin: int
    words: list[Word]
    word_length: np.ndarray
    generating_set: tuple[Word, ...]
    subgroups: tuple[SubgroupSpec, ...]
    horosphere_traces: dict[str, list[np.ndarray]]
    boundary: np.ndarray
    centers: tuple[Word, ...] = ((),)
    index: dict = field(default_factory=dict, repr=False)

    @property
    def is_ball(self) -> bool:
        return self.centers == ((),)

    def word_of(self, v: int) -> Word:
        return self.words[v]

    def vertex_of(self, word: Word | str) -> int:
        w = self.model.parse(word) if isinstance(word, str) else word
        nf = self.model.normal_form(w)
        try:
            return self.index[nf]
        except KeyError:
            raise InputError(f"{self.model.format(nf)} is not in the ball") from None

    def __contains__(self, word) -> bool:
        w = self.model.parse(word) if isinstance(word, str) else word
        return self.model.normal_form(w) in self.index

    def subgroup(self, name: str) -> SubgroupSpec:
        for s in self.subgroups:
            if s.name == name:
                return s
        raise InputError(f"no subgroup named {name!r}")


def _apply_move(model: GroupModel, nf: Word, move: Word) -> Word:
    for x in move:
        nf = model.right_multiply(nf, x)
    return nf


def generating_set_for(model: GroupModel, subgroups: Sequence[SubgroupSpec]) -> tuple[Word, ...]:
    """Model generators plus each subgroup generator that is not already one of them."""
    moves: list[Word] = [(i,) for i in range(1, model.rank + 1)]
    seen = set(moves) | {(-i,) for i in range(1, model.rank + 1)}
    for sub in subgroups:
        for w in sub.generator_words:
            nf = model.normal_form(w)
            inv = model.inverse(nf)
            if nf and nf not in seen and inv not in seen:
                moves.append(nf)
                seen.add(nf)
                seen.add(inv)
    return tuple(moves)


def cayley_ball(model: GroupModel, radius: int, subgroups: Sequence[SubgroupSpec] = (),
                *, vertex_budget: int = DEFAULT_VERTEX_BUDGET) -> CayleyBall:
    """All elements within ``radius`` of the identity, with edges for every generator move."""
    if radius < 1:
        raise InputError("radius must be >= 1")
    return cayley_region(model, [()], radius, subgroups, vertex_budget=vertex_budget)


def cayley_region(model: GroupModel, centers: Sequence[Word], radius: int,
                  subgroups: Sequence[SubgroupSpec] = (), *,
                  vertex_budget: int = DEFAULT_VERTEX_BUDGET) -> CayleyBall:
    """Union of the radius-``radius`` balls around ``centers`` (must include the identity)."""
    if radius < 0:
        raise InputError("radius must be >= 0")
    subgroups = tuple(subgroups)
    moves = generating_set_for(model, subgroups)
    centers_nf = tuple(dict.fromkeys(model.normal_form(c) for c in centers))
    if () not in centers_nf:
        raise InputError("the identity must be one of the centers")
    extended = len(moves) > model.rank
    if centers_nf == ((),) and not extended:
        sizes = model.sphere_sizes(radius)
        if sizes is not None and sum(sizes) > vertex_budget:
            raise ResourceError(
                f"ball of radius {radius} has {sum(sizes)} vertices (budget {vertex_budget})",
                needed=sum(sizes), budget=vertex_budget)
    both = [m for mv in moves for m in (mv, model.inverse(mv))]
    index: dict[Word, int] = {}
    words: list[Word] = []
    for c in centers_nf:
        if c not in index:
            index[c] = len(words)
            words.append(c)
    frontier = list(words)
    for _ in range(radius):
        nxt = []
        for w in frontier:
            for mv in both:
                u = _apply_move(model, w, mv)
                if u not in index:
                    index[u] = len(words)
                    words.append(u)
                    nxt.append(u)
        if len(words) > vertex_budget:
            raise ResourceError(
                f"region exceeds the vertex budget {vertex_budget} (at least {len(words)} needed)",
                needed=len(words), budget=vertex_budget)
        frontier = nxt
    # Edges and boundary.
    src: list[int] = []
    dst: list[int] = []
    boundary = np.zeros(len(words), bool)
    for v, w in enumerate(words):
        for mv in both:
            u = index.get(_apply_move(model, w, mv))
            if u is None:
                boundary[v] = True
            elif u > v:
                src.append(v)
                dst.append(u)
    edges = np.stack([np.asarray(src, np.int64), np.asarray(dst, np.int64)], axis=1) if src else np.zeros((0, 2), np.int64)
    graph = UnitGraph.from_edges(len(words), edges, labels=[model.format(w) for w in words])
    origin = index[()]
    if centers_nf == ((),) and not extended:
        word_length = np.asarray([len(w) for w in words], np.int32)
    else:
        word_length = graph.bfs(origin)
    traces = {s.name: _traces(model, s, words) for s in subgroups}
    return CayleyBall(model=model, graph=graph, radius=radius, origin=origin, words=words,
                      word_length=word_length, generating_set=moves, subgroups=subgroups,
                      horosphere_traces=traces, boundary=np.flatnonzero(boundary),
                      centers=centers_nf, index=index)


def power_tube(model: GroupModel, h: Word | str, n: int, radius: int,
               subgroups: Sequence[SubgroupSpec] = (), **kw) -> CayleyBall:
    """Region around the powers ``h^k`` for ``|k| <= n``: a ball stretched along ``<h>``."""
    hw = model.parse(h) if isinstance(h, str) else model.normal_form(h)
    centers = [model.power(hw, k) for k in range(-n, n + 1)]
    return cayley_region(model, centers, radius, subgroups, **kw)


def _traces(model: GroupModel, sub: SubgroupSpec, words: list[Word]) -> list[np.ndarray]:
    buckets: dict[Hashable, list[int]] = {}
    for v, w in enumerate(words):
        buckets.setdefault(model.coset_key(sub, w), []).append(v)
    traces = [np.asarray(vs, np.int64) for vs in buckets.values()]
    traces.sort(key=lambda a: int(a[0]))
    return traces


def coset_trace(ball: CayleyBall, sub: SubgroupSpec | str, g: Word | str) -> np.ndarray:
    """Ball vertices ``v`` with ``g^-1 v`` in the subgroup, by direct membership tests."""
    model = ball.model
    if isinstance(sub, str):
        sub = ball.subgroup(sub)
    gw = model.parse(g) if isinstance(g, str) else model.normal_form(g)
    ginv = model.inverse(gw)
    hits = [v for v, w in enumerate(ball.words) if model.contains(sub, model.multiply(ginv, w))]
    return np.asarray(hits, np.int64)


def intrinsic_coset_edges(ball: CayleyBall, sub: SubgroupSpec, trace: np.ndarray) -> np.ndarray:
    """Edges of the subgroup's own Cayley graph restricted to a trace (local indices)."""
    local = {int(v): i for i, v in enumerate(trace)}
    out = []
    for i, v in enumerate(trace):
        w = ball.words[int(v)]
        for g in sub.generator_words:
            u = ball.index.get(_apply_move(ball.model, w, g))
            if u is not None and u in local and local[u] != i:
                j = local[u]
                out.append((min(i, j), max(i, j)))
    return np.asarray(sorted(set(out)), np.int64).reshape(-1, 2)
