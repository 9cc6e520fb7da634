"""Finite-window verdicts for representation stability of module families and
action stability of families of finite S_n-sets.

"Eventually constant" is read as constant on the tail of the window; every
report states the onset it observed and never claims anything past n_max.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Hashable, Optional, Sequence

from ._echelon import Echelon, express
from .chars import (
    CharacterFn,
    decompose_character,
    isotypic_projection,
    powerset_character,
)
from .powerset import filtration_basis, inclusion, level_vectors, sigma, sn_span
from .squarefree import sf_act
from .symcore import (
    CHARACTER_CAP,
    GROUP_ENUMERATION_CAP,
    DegreeError,
    Permutation,
    SubsetVector,
    act_subset,
    act_vector,
    all_permutations,
    check_group_cap,
    conjugacy_classes,
    format_subset,
    from_stable,
    generators,
    identity,
    StableLabel,
    subsets_of_size,
)


def _stable_range_start(mu: tuple) -> int:
    """Smallest n for which V(mu)_n (or an orbit of stable type mu) exists."""
    return sum(mu) + (mu[0] if mu else 0)


def _onset(values: dict, n_max: int) -> int:
    """First n from which ``values`` (n -> int) is constant up to n_max."""
    ns = sorted(values)
    onset = ns[-1]
    for n in reversed(ns[:-1]):
        if values[n] != values[n_max]:
            break
        onset = n
    return onset


@dataclass
class TypeTrack:
    """Multiplicity of one stable type across the window."""

    values: dict
    entry: int
    onset: int
    checked: bool
    confirmed: bool

    @property
    def stable_value(self) -> int:
        return self.values[max(self.values)]


def _track_types(per_n: dict, n_start: int, n_max: int) -> dict:
    seen = sorted({mu for tab in per_n.values() for mu in tab}, key=lambda m: (sum(m), m))
    out = {}
    for mu in seen:
        entry = max(n_start, _stable_range_start(mu))
        values = {n: per_n[n].get(mu, 0) for n in sorted(per_n) if n >= entry}
        if not values:
            continue
        onset = _onset(values, n_max)
        out[mu] = TypeTrack(values, entry, onset, checked=entry == n_start,
                            confirmed=onset < n_max)
    return out


# --------------------------------------------------------------------------
# module families

@dataclass
class ModuleFamily:
    """A sequence of S_n-modules with connecting maps to level n+1.

    ``embed(n)`` returns the map from level n to level n + 1. ``character``
    is an optional fast path; otherwise characters are traced on ``basis``.
    ``module_generators`` spans the module under S_n (defaults to the basis).
    """

    name: str
    basis: Callable[[int], list]
    action: Callable[[Permutation, object], object]
    embed: Callable[[int], Callable]
    valid_from: int = 0
    character: Optional[Callable[[int], CharacterFn]] = None
    module_generators: Optional[Callable[[int], list]] = None

    def character_at(self, n: int) -> CharacterFn:
        if self.character is not None:
            return self.character(n)
        return span_character(self.basis(n), n, self.action)

    def generators_at(self, n: int) -> list:
        if self.module_generators is not None:
            return self.module_generators(n)
        return self.basis(n)


def span_character(vectors: Sequence, n: int, action: Callable) -> CharacterFn:
    """Character of an S_n-invariant span, by traces on class representatives."""
    if not vectors:
        return CharacterFn(n, {ct: 0 for ct, _ in conjugacy_classes(n)})
    kind = type(vectors[0])
    ech = Echelon(v.as_dict() for v in vectors)

    def trace(ct):
        p = ct.representative()
        return ech.trace(lambda row: action(p, kind._raw(n, row)).as_dict())

    return CharacterFn.from_function(n, trace)


def _top(j: int) -> int:
    return (1 << j) - 1


def lp_k_family(k: int) -> ModuleFamily:
    return ModuleFamily(
        name=f"LP_{k}",
        basis=lambda n: level_vectors(n, k),
        action=act_vector,
        embed=lambda n: inclusion,
        valid_from=k,
        character=lambda n: powerset_character(n, k),
        module_generators=lambda n: [SubsetVector.basis(n, _top(k))],
    )


def lp_family() -> ModuleFamily:
    return ModuleFamily(
        name="LP",
        basis=lambda n: [SubsetVector.basis(n, a) for a in range(1 << n)],
        action=act_vector,
        embed=lambda n: inclusion,
        valid_from=0,
        character=lambda n: powerset_character(n),
        module_generators=lambda n: [SubsetVector.basis(n, _top(j)) for j in range(n + 1)],
    )


def sf_k_family(k: int) -> ModuleFamily:
    """Square-free polynomials of degree k, acted on by variable substitution."""
    return ModuleFamily(
        name=f"Sf_{k}",
        basis=lambda n: level_vectors(n, k),
        action=sf_act,
        embed=lambda n: inclusion,
        valid_from=k,
        module_generators=lambda n: [SubsetVector.basis(n, _top(k))],
    )


@lru_cache(maxsize=None)
def _filtration_embedding(n: int, k: int, i: int):
    src = filtration_basis(n, k, i)
    dst = filtration_basis(n + 1, k, i)
    # masks of i-subsets of 1..n keep their positions in the bitmask order
    # of i-subsets of 1..n+1, so dst[:len(src)] are the matching vectors
    dst = dst[:len(src)]
    rows = [s.as_dict() for s in src]

    def embed(v: SubsetVector) -> SubsetVector:
        coeffs = express(rows, v.as_dict())
        out = SubsetVector(n + 1)
        for c, w in zip(coeffs, dst):
            if c:
                out = out + w * c
        return out

    return embed


def filtration_family(k: int, i: int) -> ModuleFamily:
    """F_i LP_k, with sigma_k^n(A) sent to sigma_k^{n+1}(A)."""
    if not 0 <= i <= k:
        raise ValueError(f"need 0 <= i <= k, got i={i}, k={k}")
    return ModuleFamily(
        name=f"F_{i}LP_{k}",
        basis=lambda n: filtration_basis(n, k, i),
        action=act_vector,
        embed=lambda n: _filtration_embedding(n, k, i),
        valid_from=2 * k,
        module_generators=lambda n: [sigma(n, k, _top(i))],
    )


@dataclass
class MapCheck:
    n: int
    equivariant: bool
    injective: bool
    surjective: bool
    image_span_dim: int
    target_dim: int


@dataclass
class StabilityReport:
    family: str
    n_min: int
    n_max: int
    tables: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    monotonicity: dict = field(default_factory=dict)
    types: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return all(m.equivariant for m in self.maps.values())

    @property
    def injective(self) -> bool:
        return all(m.injective for m in self.maps.values())

    @property
    def surjective(self) -> bool:
        return all(m.surjective for m in self.maps.values())

    @property
    def maps_checked_upto(self) -> Optional[int]:
        return max(self.maps) if self.maps else None

    @property
    def multiplicities_stable_from(self) -> Optional[int]:
        checked = [t for t in self.types.values() if t.checked]
        if not checked or not all(t.confirmed for t in checked):
            return None
        return max(t.onset for t in checked)

    @property
    def uniform(self) -> bool:
        """Stable, and every observed type is constant from its entry point."""
        if self.multiplicities_stable_from is None:
            return False
        return all(t.onset == t.entry for t in self.types.values() if t.entry < self.n_max)

    @property
    def monotonic(self) -> bool:
        return all(v["monotone"] for per in self.monotonicity.values() for v in per.values())

    @property
    def monotonic_checked_upto(self) -> Optional[int]:
        return max(self.monotonicity) if self.monotonicity else None

    def stable_tables(self) -> dict:
        return {n: t.stable() for n, t in self.tables.items()}

    def stable_multiplicities(self) -> dict:
        """Tail values of every type observed before n_max."""
        return {mu: t.stable_value for mu, t in self.types.items() if t.entry < self.n_max}

    def summary(self) -> dict:
        return {
            "family": self.family,
            "window": [self.n_min, self.n_max],
            "consistent": self.consistent,
            "injective": self.injective,
            "surjective": self.surjective,
            "maps_checked_upto": self.maps_checked_upto,
            "multiplicities_stable_from": self.multiplicities_stable_from,
            "uniform": self.uniform,
            "monotonic": self.monotonic,
            "monotonic_checked_upto": self.monotonic_checked_upto,
        }


def check_map(fam: ModuleFamily, n: int) -> MapCheck:
    """Equivariance (on generators of S_n), injectivity and S_{n+1}-surjectivity."""
    check_group_cap(n + 1)
    src = fam.basis(n)
    dst = fam.basis(n + 1)
    phi = fam.embed(n)
    images = [phi(b) for b in src]
    equivariant = all(
        phi(fam.action(g, b)) == fam.action(g.extend(n + 1), img)
        for g in generators(n) for b, img in zip(src, images))
    rank = len(Echelon(v.as_dict() for v in images))
    span = sn_span(images, n + 1, fam.action)
    return MapCheck(n, equivariant, rank == len(src), len(span) == len(dst),
                    len(span), len(dst))


def monotonicity_check(fam: ModuleFamily, n: int) -> dict:
    """For each stable type mu with multiplicity c at level n, compare c with
    the multiplicity of V(mu)_{n+1} in the S_{n+1}-span of the image of the
    mu-isotypic component.
    """
    if n + 1 > GROUP_ENUMERATION_CAP:
        raise DegreeError(f"monotonicity needs S_{n + 1}; cap is {GROUP_ENUMERATION_CAP}")
    table = decompose_character(fam.character_at(n))
    phi = fam.embed(n)
    gens = fam.generators_at(n)
    out = {}
    for lam, c in table.entries.items():
        mu = lam[1:]
        proj = [isotypic_projection(lam, fam.action, g) for g in gens]
        iso = sn_span([v for v in proj if v], n, fam.action)
        image = [phi(v) for v in iso]
        span = sn_span(image, n + 1, fam.action)
        got = decompose_character(span_character(span, n + 1, fam.action))
        m = got.entries.get(from_stable(StableLabel(mu, n + 1)), 0)
        out[mu] = {"partition": lam, "multiplicity": c, "isotypic_dim": len(iso),
                   "span_multiplicity": m, "monotone": m >= c}
    return out


def rep_stability_report(fam: ModuleFamily, n_min: int, n_max: int,
                         monotonicity: bool = True) -> StabilityReport:
    """Check a module family over [n_min, n_max].

    Multiplicities use characters (n <= 10); connecting maps need S_{n+1}
    (n + 1 <= 8); monotonicity runs for n <= 7.
    """
    if n_min > n_max:
        raise ValueError("empty window")
    if n_max > CHARACTER_CAP:
        raise DegreeError(f"n_max={n_max} exceeds the character cap {CHARACTER_CAP}")
    rep = StabilityReport(fam.name, n_min, n_max)
    start = max(n_min, fam.valid_from)
    if start > n_min:
        rep.notes.append(f"{fam.name} is defined from n={fam.valid_from}; "
                         f"levels {n_min}..{start - 1} skipped")
    if start > n_max:
        return rep
    for n in range(start, n_max + 1):
        rep.tables[n] = decompose_character(fam.character_at(n))
    for n in range(start, n_max):
        if n + 1 > GROUP_ENUMERATION_CAP:
            rep.notes.append(f"maps from n={n} on not checked (group cap "
                             f"{GROUP_ENUMERATION_CAP})")
            break
        rep.maps[n] = check_map(fam, n)
        if monotonicity:
            rep.monotonicity[n] = monotonicity_check(fam, n)
    rep.types = _track_types(rep.stable_tables(), start, n_max)
    return rep


# --------------------------------------------------------------------------
# S_n-sets

@dataclass
class FiniteSnSet:
    n: int
    points: list
    action: Callable[[Permutation, Hashable], Hashable]

    def __post_init__(self):
        self._index = {x: i for i, x in enumerate(self.points)}
        if len(self._index) != len(self.points):
            raise ValueError("repeated points")

    def index(self, x) -> int:
        return self._index[x]

    def __contains__(self, x) -> bool:
        return x in self._index

    def __len__(self):
        return len(self.points)

    def check_action(self) -> bool:
        """Closure, identity and the composition law, spot-checked on generators."""
        gens = generators(self.n) if self.n >= 2 else []
        e = identity(self.n)
        for x in self.points:
            if self.action(e, x) != x:
                return False
            for g in gens:
                if self.action(g, x) not in self:
                    return False
                for h in gens:
                    if self.action(g * h, x) != self.action(g, self.action(h, x)):
                        return False
        return True


def orbit_decomposition(xs: FiniteSnSet) -> list[list]:
    """Orbits under S_n, each in point order, ordered by first point."""
    parent = list(range(len(xs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for g in (generators(xs.n) if xs.n >= 2 else []):
        for i, x in enumerate(xs.points):
            a, b = find(i), find(xs.index(xs.action(g, x)))
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict = {}
    for i in range(len(xs)):
        groups.setdefault(find(i), []).append(i)
    return [[xs.points[i] for i in idx] for _, idx in sorted(groups.items())]


def stabilizer(xs: FiniteSnSet, x) -> list[Permutation]:
    check_group_cap(xs.n)
    return [p for p in all_permutations(xs.n) if xs.action(p, x) == x]


def orbit_type(xs: FiniteSnSet, orbit: Sequence, representative=None) -> tuple:
    """Sizes of the orbits of Stab(x) on 1..n, in decreasing order."""
    if not orbit:
        raise ValueError("empty orbit")
    x = orbit[0] if representative is None else representative
    if x not in orbit:
        raise ValueError("representative is not in the orbit")
    stab = stabilizer(xs, x)
    seen = set()
    sizes = []
    for a in range(1, xs.n + 1):
        if a in seen:
            continue
        block = {p(a) for p in stab}
        seen |= block
        sizes.append(len(block))
    return tuple(sorted(sizes, reverse=True))


def permutation_character(xs: FiniteSnSet) -> CharacterFn:
    return CharacterFn.from_function(
        xs.n, lambda ct: sum(1 for x in xs.points
                             if xs.action(ct.representative(), x) == x))


@dataclass
class SetFamily:
    name: str
    build: Callable[[int], FiniteSnSet]
    embed: Callable[[int, Hashable], Hashable]
    fmt: Callable[[Hashable], str] = str
    valid_from: int = 0


def subsets_family(k: int) -> SetFamily:
    return SetFamily(
        name=f"P_{k}",
        build=lambda n: FiniteSnSet(n, subsets_of_size(n, k), act_subset),
        embed=lambda n, a: a,
        fmt=format_subset,
        valid_from=k,
    )


def powerset_family() -> SetFamily:
    return SetFamily(
        name="P",
        build=lambda n: FiniteSnSet(n, list(range(1 << n)), act_subset),
        embed=lambda n, a: a,
        fmt=format_subset,
    )


def natural_family() -> SetFamily:
    return SetFamily(
        name="natural",
        build=lambda n: FiniteSnSet(n, list(range(1, n + 1)), lambda p, x: p(x)),
        embed=lambda n, x: x,
        valid_from=1,
    )


@dataclass
class OrbitInventory:
    n: int
    orbits: list
    types: list

    def stable_counts(self) -> dict:
        out: dict = {}
        for t in self.types:
            mu = t[1:]
            out[mu] = out.get(mu, 0) + 1
        return out

    def raw_counts(self) -> dict:
        out: dict = {}
        for t in self.types:
            out[t] = out.get(t, 0) + 1
        return out

    def of_type(self, mu: tuple) -> list[int]:
        return [i for i, t in enumerate(self.types) if t[1:] == mu]


def orbit_inventory(xs: FiniteSnSet) -> OrbitInventory:
    orbits = orbit_decomposition(xs)
    return OrbitInventory(xs.n, orbits, [orbit_type(xs, o) for o in orbits])


@dataclass
class ActionStabilityReport:
    family: str
    n_min: int
    n_max: int
    inventories: dict = field(default_factory=dict)
    cards: dict = field(default_factory=dict)
    steps: dict = field(default_factory=dict)
    types: dict = field(default_factory=dict)
    closure: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def orbit_sizes_ok(self) -> bool:
        return all(sum(len(o) for o in inv.orbits) == self.cards[n]
                   for n, inv in self.inventories.items())

    @property
    def condition_a(self) -> bool:
        return all(s["equivariant"] and s["injective"] and s["surjective"]
                   for s in self.steps.values())

    @property
    def condition_b(self) -> bool:
        checked = [t for t in self.types.values() if t.checked]
        return bool(checked) and all(t.confirmed for t in checked)

    def condition_c(self, mu: tuple) -> bool:
        """(c) for every step from the type's onset on."""
        track = self.types[mu]
        steps = self.closure.get(mu, {})
        return all(v["holds"] for n, v in steps.items() if n >= track.onset)

    @property
    def action_stable(self) -> bool:
        return self.condition_a and self.condition_b

    @property
    def strongly_action_stable(self) -> bool:
        return self.action_stable and all(
            self.condition_c(mu) for mu, t in self.types.items() if t.checked)

    def summary(self) -> dict:
        return {
            "family": self.family,
            "window": [self.n_min, self.n_max],
            "condition_a": self.condition_a,
            "condition_b": self.condition_b,
            "action_stable": self.action_stable,
            "strongly_action_stable": self.strongly_action_stable,
        }


def action_stability_report(fam: SetFamily, n_min: int, n_max: int) -> ActionStabilityReport:
    if n_min > n_max:
        raise ValueError("empty window")
    if n_max > GROUP_ENUMERATION_CAP:
        raise DegreeError(f"n_max={n_max} exceeds the group cap {GROUP_ENUMERATION_CAP}")
    rep = ActionStabilityReport(fam.name, n_min, n_max)
    start = max(n_min, fam.valid_from)
    if start > n_min:
        rep.notes.append(f"{fam.name} is defined from n={fam.valid_from}")
    sets = {n: fam.build(n) for n in range(start, n_max + 1)}
    rep.cards = {n: len(xs) for n, xs in sets.items()}
    for n, xs in sets.items():
        rep.inventories[n] = orbit_inventory(xs)
    for n in range(start, n_max):
        src, dst = sets[n], sets[n + 1]
        inv_dst = rep.inventories[n + 1]
        where = {x: j for j, o in enumerate(inv_dst.orbits) for x in o}
        images = [fam.embed(n, x) for x in src.points]
        gens = generators(n) if n >= 2 else []
        equivariant = all(
            fam.embed(n, src.action(g, x)) == dst.action(g.extend(n + 1), y)
            for g in gens for x, y in zip(src.points, images))
        hit = {where[y] for y in images if y in dst}
        missing = [inv_dst.orbits[j][0] for j in range(len(inv_dst.orbits)) if j not in hit]
        rep.steps[n] = {
            "equivariant": equivariant,
            "injective": len(set(images)) == len(images) and all(y in dst for y in images),
            "surjective": not missing,
            "missing_orbits": [fam.fmt(x) for x in missing],
        }
    per_n = {n: inv.stable_counts() for n, inv in rep.inventories.items()}
    rep.types = _track_types(per_n, start, n_max)
    for mu in rep.types:
        rep.closure[mu] = {}
        for n in range(start, n_max):
            src_inv, dst_inv = rep.inventories[n], rep.inventories[n + 1]
            where = {x: j for j, o in enumerate(dst_inv.orbits) for x in o}
            ys = [x for i in src_inv.of_type(mu) for x in src_inv.orbits[i]]
            reached = sorted({where[fam.embed(n, x)] for x in ys})
            target = dst_inv.of_type(mu)
            rep.closure[mu][n] = {
                "holds": reached == target,
                "closure": [dst_inv.orbits[j][0] for j in reached],
                "target": [dst_inv.orbits[j][0] for j in target],
            }
    return rep
