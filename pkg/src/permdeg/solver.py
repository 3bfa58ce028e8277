"""Exact computation of the minimal faithful permutation degree mu(G),
a brute-force oracle, and executable forms of the additivity, socle,
semidirect and compression-ratio results.

Throughout, a representation is a multiset of subgroups {H_1..H_m} standing
for the action of G on the disjoint union of the coset spaces G/H_i; it is
faithful iff the intersection of the cores of the H_i is trivial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (
    DomainError,
    InternalInvariantError,
    PreconditionError,
    ResourceCapError,
)
from .groups import (
    FiniteGroup,
    PrimaryDecomposition,
    Subgroup,
    SubgroupLattice,
    abelian_basis,
    bits_to_list,
    center,
    core,
    direct_product,
    list_to_bits,
    popcount,
    prime_factors,
    primary_decomposition,
    semidirect_product,
    socle,
    subgroup_as_group,
)

ORACLE_CAP = 48


@dataclass(frozen=True)
class Representation:
    """A multiset of subgroups of ``parent``; degree is the sum of indices."""

    parent: FiniteGroup
    parts: tuple[Subgroup, ...]

    def __post_init__(self):
        for H in self.parts:
            if H.parent is not self.parent:
                raise DomainError("all parts must be subgroups of the parent group")

    def part_bits(self) -> list[int]:
        return [H.bits for H in self.parts]


def representation(parent: FiniteGroup, parts: Sequence[Subgroup]) -> Representation:
    return Representation(parent, tuple(parts))


def degree(R: Representation) -> int:
    return sum(H.index for H in R.parts)


def is_faithful(R: Representation) -> bool:
    G = R.parent
    inter = (1 << G.order) - 1
    for H in R.parts:
        inter &= core(G, H).bits
        if inter == 1:
            return True
    return inter == 1


def kernel_bits(R: Representation) -> int:
    """Bitset of the kernel of the coset-action homomorphism."""
    G = R.parent
    inter = (1 << G.order) - 1
    for H in R.parts:
        inter &= core(G, H).bits
    return inter


def realize_action(R: Representation) -> list[tuple[int, ...]]:
    """The coset-action permutation of every group element, as tuples over
    the disjoint union of the coset spaces (blocks in part order)."""
    G = R.parent
    n = G.order
    blocks = []
    offset = 0
    for H in R.parts:
        coset_idx = [-1] * n
        reps = []
        for g in range(n):
            if coset_idx[g] == -1:
                ci = len(reps)
                for x in H.elements():
                    coset_idx[G.mul(g, x)] = ci
                reps.append(g)
        blocks.append((reps, coset_idx, offset))
        offset += len(reps)
    out = []
    for g in range(n):
        perm = [0] * offset
        for reps, coset_idx, off in blocks:
            for ci, rep in enumerate(reps):
                perm[off + ci] = off + coset_idx[G.mul(g, rep)]
        out.append(tuple(perm))
    return out


def cover_sets(G: FiniteGroup, lattice: SubgroupLattice) -> list[int]:
    """For each lattice subgroup H, the bitmask over minimal normal subgroups
    N (in lattice order) with N not contained in core(H).

    A representation is faithful iff the union of its parts' masks is full.
    """
    minimal = [lattice.subgroups[i].bits for i in lattice.minimal_normals]
    out = []
    for i in range(len(lattice)):
        cb = lattice.core_bits(i)
        mask = 0
        for k, nb in enumerate(minimal):
            if (cb | nb) != cb:
                mask |= 1 << k
        out.append(mask)
    return out


@dataclass
class SolveResult:
    mu: int
    witness: Representation
    nodes_explored: int = 0
    candidates_considered: int = 0
    proven_optimal: bool = True


def _trivial_result(G: FiniteGroup) -> SolveResult:
    # mu(trivial) = 1 by convention: it embeds in S_1
    return SolveResult(mu=1, witness=representation(G, [G.trivial_subgroup()]),
                       proven_optimal=True)


def mu_exact(G: FiniteGroup) -> SolveResult:
    """Exact mu(G) by branch-and-bound weighted set cover.

    Universe: minimal normal subgroups.  Candidates: meet-irreducible
    subgroups with nonempty cover set, dominance-pruned.  Branching picks the
    uncovered universe element with fewest candidates; the admissible bound
    is the max over uncovered elements of the cheapest cover.  A memo on the
    uncovered mask prunes re-derivations reached by another candidate order.
    """
    if G.order == 1:
        return _trivial_result(G)
    lat = G.lattice()
    covers = cover_sets(G, lat)
    flags = lat.meet_irreducible_flags()
    n = G.order
    raw = []
    for i, H in enumerate(lat.subgroups):
        if flags[i] and covers[i]:
            raw.append((n // H.order, i, covers[i]))
    raw.sort(key=lambda t: (t[0], t[1]))
    # dominance: drop a candidate if an earlier one covers a superset at <= cost
    cands: list[tuple[int, int, int]] = []
    for cost, idx, cov in raw:
        if any(kcov | cov == kcov for kcost, _, kcov in cands if kcost <= cost):
            continue
        cands.append((cost, idx, cov))
    u = len(lat.minimal_normals)
    full = (1 << u) - 1
    cands_for: list[list[int]] = [[] for _ in range(u)]
    mincost = [0] * u
    for pos, (cost, idx, cov) in enumerate(cands):
        for k in range(u):
            if (cov >> k) & 1:
                cands_for[k].append(pos)
    for k in range(u):
        if not cands_for[k]:
            raise InternalInvariantError(
                "a minimal normal subgroup is covered by no meet-irreducible subgroup"
            )
        mincost[k] = min(cands[p][0] for p in cands_for[k])

    # greedy seed: cheapest cost per newly covered element
    uncovered = full
    g_cost, g_chosen = 0, []
    while uncovered:
        best = min(
            (p for p in range(len(cands)) if cands[p][2] & uncovered),
            key=lambda p: (Fraction(cands[p][0], popcount(cands[p][2] & uncovered)),
                           cands[p][1]),
        )
        g_chosen.append(best)
        g_cost += cands[best][0]
        uncovered &= ~cands[best][2]

    best_cost = g_cost
    best_chosen = list(g_chosen)
    memo: dict[int, int] = {}
    nodes = 0

    def dfs(uncovered: int, cost: int, chosen: list[int]) -> None:
        nonlocal best_cost, best_chosen, nodes
        nodes += 1
        prev = memo.get(uncovered)
        if prev is not None and prev <= cost:
            return
        memo[uncovered] = cost
        bound = 0
        for k in range(u):
            if (uncovered >> k) & 1 and mincost[k] > bound:
                bound = mincost[k]
        if cost + bound >= best_cost:
            return
        k = min((k for k in range(u) if (uncovered >> k) & 1),
                key=lambda k: len(cands_for[k]))
        for p in cands_for[k]:
            ccost, _, ccov = cands[p]
            new_uncovered = uncovered & ~ccov
            new_cost = cost + ccost
            if new_uncovered == 0:
                if new_cost < best_cost:
                    best_cost = new_cost
                    best_chosen = chosen + [p]
            else:
                dfs(new_uncovered, new_cost, chosen + [p])

    dfs(full, 0, [])
    parts = sorted((cands[p] for p in best_chosen), key=lambda t: (t[0], t[1]))
    witness = representation(G, [lat.subgroups[idx] for _, idx, _ in parts])
    if degree(witness) != best_cost or not is_faithful(witness):
        raise InternalInvariantError("solver produced an invalid witness")
    return SolveResult(mu=best_cost, witness=witness, nodes_explored=nodes,
                       candidates_considered=len(cands), proven_optimal=True)


def mu_oracle(G: FiniteGroup) -> SolveResult:
    """Independent brute force: exhaustive cost-bounded DFS over subsets of
    ALL subgroups, with no meet-irreducible restriction and no dominance
    pruning.  Only valid up to order 48."""
    if G.order > ORACLE_CAP:
        raise ResourceCapError(f"oracle restricted to order <= {ORACLE_CAP}")
    if G.order == 1:
        return _trivial_result(G)
    lat = G.lattice()
    n = G.order
    subs = sorted(range(len(lat)),
                  key=lambda i: (n // lat.subgroups[i].order, i))
    costs = [n // lat.subgroups[i].order for i in subs]
    cores = [lat.core_bits(i) for i in subs]
    full = (1 << n) - 1
    best_cost = n + 1
    best_chosen: list[int] = []
    nodes = 0

    def dfs(start: int, inter: int, cost: int, chosen: list[int]) -> None:
        nonlocal best_cost, best_chosen, nodes
        for j in range(start, len(subs)):
            new_cost = cost + costs[j]
            if new_cost >= best_cost:
                return  # costs ascending: nothing later can be cheaper
            new_inter = inter & cores[j]
            if new_inter == inter:
                continue  # adding a subgroup that shrinks nothing never helps
            nodes += 1
            if new_inter == 1:
                best_cost = new_cost
                best_chosen = chosen + [j]
            elif new_cost + 2 < best_cost:
                # any further shrink needs a proper subgroup, index >= 2
                dfs(j + 1, new_inter, new_cost, chosen + [j])

    dfs(0, full, 0, [])
    if best_cost > n:
        raise InternalInvariantError("oracle failed to find the regular representation")
    witness = representation(G, [lat.subgroups[subs[j]] for j in best_chosen])
    if degree(witness) != best_cost or not is_faithful(witness):
        raise InternalInvariantError("oracle produced an invalid witness")
    return SolveResult(mu=best_cost, witness=witness, nodes_explored=nodes,
                       candidates_considered=len(subs), proven_optimal=True)


# -- abelian formula ------------------------------------------------------


def m_value(d: PrimaryDecomposition) -> int:
    """Sum of the prime-power factors; 1 for the trivial decomposition,
    matching the mu(trivial) = 1 convention."""
    return sum(d.factors) if d.factors else 1


def mu_abelian(G: FiniteGroup) -> int:
    if not G.is_abelian():
        raise DomainError("mu_abelian requires an abelian group")
    mu = m_value(primary_decomposition(G))
    w = abelian_witness(G)
    if degree(w) != mu or not is_faithful(w):
        raise InternalInvariantError("abelian witness does not match m(G)")
    return mu


def abelian_witness(G: FiniteGroup) -> Representation:
    """The explicit minimal representation: with basis g_1..g_k realizing the
    primary decomposition, part H_j is generated by every g_i except g_j."""
    if not G.is_abelian():
        raise DomainError("abelian witness requires an abelian group")
    if G.order == 1:
        return representation(G, [G.trivial_subgroup()])
    basis = abelian_basis(G)
    parts = []
    for j in range(len(basis)):
        gens = [g for i, (g, _) in enumerate(basis) if i != j]
        parts.append(Subgroup(G, G.subgroup_generated_bits(gens)))
    return representation(G, parts)


# -- induced representations and decompositions ---------------------------


def induced_representation(R: Representation, H: Subgroup) -> Representation:
    """Parts G_i intersected with H, reindexed as subgroups of H-as-a-group."""
    G = R.parent
    if H.parent is not G:
        raise DomainError("H must be a subgroup of the representation's parent")
    Hgrp, embed = subgroup_as_group(H)
    pos = {e: i for i, e in enumerate(embed)}
    parts = []
    for P in R.parts:
        inter = P.bits & H.bits
        parts.append(Subgroup(Hgrp, list_to_bits(pos[e] for e in bits_to_list(inter))))
    return representation(Hgrp, parts)


@dataclass
class DecompositionReport:
    kind: str                      # 'faithful' | 'weak-faithful' | 'none'
    left_indices: tuple[int, ...]  # positions of the G-side parts within R
    right_indices: tuple[int, ...]
    degree_total: int
    induced_degree_left: int       # mu_G(R'_G)
    induced_degree_right: int      # mu_H(R''_H)


def _factor_slices(P: FiniteGroup, nG: int, nH: int, K_bits: int):
    """For K <= G x H under pair indexing: (K cap Gx1 as G-bits,
    K cap 1xH as H-bits, proj-to-G bits, proj-to-H bits)."""
    capG = 0
    capH = 0
    projG = 0
    projH = 0
    for e in bits_to_list(K_bits):
        g, h = divmod(e, nH)
        projG |= 1 << g
        projH |= 1 << h
        if h == 0:
            capG |= 1 << g
        if g == 0:
            capH |= 1 << h
    return capG, capH, projG, projH


def check_decomposition(G: FiniteGroup, H: FiniteGroup, R: Representation,
                        left_indices: Sequence[int]) -> DecompositionReport:
    """Classify a bipartition of a representation of G x H as a faithful
    decomposition, a weak faithful decomposition, or neither."""
    P = R.parent
    nG, nH = G.order, H.order
    if P.order != nG * nH:
        raise DomainError("representation parent is not the product of the factors")
    m = len(R.parts)
    left = sorted(set(left_indices))
    if left and (left[0] < 0 or left[-1] >= m):
        raise DomainError("split indices out of range")
    right = [i for i in range(m) if i not in set(left)]
    slices = [_factor_slices(P, nG, nH, K.bits) for K in R.parts]

    # weak: induced representations on the embedded factors are faithful
    interG = (1 << nG) - 1
    for i in left:
        interG &= core(G, Subgroup(G, slices[i][0])).bits
    interH = (1 << nH) - 1
    for i in right:
        interH &= core(H, Subgroup(H, slices[i][1])).bits
    weak_ok = interG == 1 and interH == 1

    # faithful: each side is the preimage of a faithful representation of its factor
    fullH = (1 << nH) - 1
    fullG = (1 << nG) - 1
    faithful_ok = True
    cG = fullG
    for i in left:
        capG, _, projG, projH = slices[i]
        if projH != fullH or popcount(R.parts[i].bits) != popcount(projG) * nH:
            faithful_ok = False
            break
        cG &= core(G, Subgroup(G, projG)).bits
    if faithful_ok:
        cH = fullH
        for i in right:
            _, capH, projG, projH = slices[i]
            if projG != fullG or popcount(R.parts[i].bits) != popcount(projH) * nG:
                faithful_ok = False
                break
            cH &= core(H, Subgroup(H, projH)).bits
        faithful_ok = faithful_ok and cG == 1 and cH == 1

    kind = "faithful" if faithful_ok else ("weak-faithful" if weak_ok else "none")
    degL = sum(nG // popcount(slices[i][0]) for i in left)
    degR = sum(nH // popcount(slices[i][1]) for i in right)
    return DecompositionReport(kind=kind, left_indices=tuple(left),
                               right_indices=tuple(right),
                               degree_total=degree(R),
                               induced_degree_left=degL,
                               induced_degree_right=degR)


def find_weak_decomposition(G: FiniteGroup, H: FiniteGroup,
                            R: Representation) -> Optional[DecompositionReport]:
    """First bipartition (masks in increasing order, bit i = part i on the
    G side) whose induced representations on both factors are faithful."""
    m = len(R.parts)
    if m > 20:
        raise ResourceCapError("bipartition search capped at 20 parts")
    for mask in range(1 << m):
        left = [i for i in range(m) if (mask >> i) & 1]
        report = check_decomposition(G, H, R, left)
        if report.kind in ("faithful", "weak-faithful"):
            return report
    return None


def weak_decomposition_inequality_check(report: DecompositionReport) -> bool:
    """deg(R) >= mu_G(R'_G) + mu_H(R''_H) for a weak faithful decomposition."""
    if report.kind not in ("faithful", "weak-faithful"):
        raise PreconditionError("report does not describe a weak faithful decomposition")
    return report.degree_total >= report.induced_degree_left + report.induced_degree_right


# -- meet-irreducible reduction -------------------------------------------


def reduce_to_meet_irreducible(R: Representation) -> Representation:
    """Replace meet-reducible parts K by a pair of strictly larger subgroups
    with meet K until every part is meet-irreducible; the degree and
    faithfulness of a minimal-degree input are preserved.

    The pair is the lexicographically-first pair of minimal strict
    supergroups of K (by lattice index) whose intersection is K.
    """
    G = R.parent
    mu = mu_exact(G).mu
    if not is_faithful(R):
        raise PreconditionError("input representation is not faithful")
    if degree(R) != mu:
        raise PreconditionError(
            f"input degree {degree(R)} is not minimal (mu = {mu})"
        )
    lat = G.lattice()
    flags = lat.meet_irreducible_flags()
    parts = sorted({H.bits for H in R.parts})
    for _ in range(len(lat) * len(lat) + len(lat)):
        target = next((b for b in parts if not flags[lat.index_of[b]]), None)
        if target is None:
            break
        ti = lat.index_of[target]
        mins = lat.minimal_strict_supergroups(ti)
        pair = next(((a, b) for ai, a in enumerate(mins) for b in mins[ai + 1:]
                     if lat.subgroups[a].bits & lat.subgroups[b].bits == target),
                    None)
        if pair is None:
            raise InternalInvariantError(
                "meet-reducible subgroup with no meeting pair of minimal supergroups"
            )
        parts = sorted((set(parts) - {target})
                       | {lat.subgroups[pair[0]].bits, lat.subgroups[pair[1]].bits})
    else:
        raise InternalInvariantError("meet-irreducible reduction did not terminate")
    out = representation(G, [lat.subgroups[lat.index_of[b]] for b in parts])
    if degree(out) != mu or not is_faithful(out):
        raise InternalInvariantError("reduction changed degree or faithfulness")
    return out


# -- CS / CSE and additivity ----------------------------------------------


def is_CS(G: FiniteGroup) -> bool:
    """Central-socle membership: G nontrivial and Soc(G) <= Z(G)."""
    if G.order == 1:
        return False
    return center(G).contains_subgroup(socle(G))


def is_CSE(G: FiniteGroup) -> tuple[bool, Optional[Subgroup]]:
    """Membership in the extension of CS: some H <= G with H in CS and
    mu(H) = mu(G).  Returns (verdict, witness subgroup)."""
    if G.order > ORACLE_CAP:
        raise ResourceCapError(f"is_CSE needs mu of every subgroup; order <= {ORACLE_CAP}")
    mu = mu_exact(G).mu
    lat = G.lattice()
    # check G first, then subgroups by descending order (lattice index ties)
    order = sorted(range(len(lat)), key=lambda i: (-lat.subgroups[i].order, i))
    for i in order:
        H = lat.subgroups[i]
        Hgrp, _ = subgroup_as_group(H)
        if is_CS(Hgrp) and mu_exact(Hgrp).mu == mu:
            return True, H
    return False, None


@dataclass
class AdditivityRecord:
    lhs: int        # mu(G x H)
    rhs: int        # mu(G) + mu(H)
    equal: bool
    guaranteed: str  # 'coprime' | 'CS' | 'CSE' | 'none'


def verify_additivity(G: FiniteGroup, H: FiniteGroup,
                      cap: int = 256) -> AdditivityRecord:
    P = direct_product(G, H, cap=cap)
    lhs = mu_exact(P).mu
    rhs = mu_exact(G).mu + mu_exact(H).mu
    if lhs > rhs:
        raise InternalInvariantError(
            "subadditivity violated: mu(GxH) exceeded mu(G)+mu(H)"
        )
    if math.gcd(G.order, H.order) == 1:
        guaranteed = "coprime"
    elif is_CS(G) and is_CS(H):
        guaranteed = "CS"
    elif (G.order <= ORACLE_CAP and H.order <= ORACLE_CAP
          and is_CSE(G)[0] and is_CSE(H)[0]):
        guaranteed = "CSE"
    else:
        guaranteed = "none"
    return AdditivityRecord(lhs=lhs, rhs=rhs, equal=lhs == rhs, guaranteed=guaranteed)


# -- compression ratio -----------------------------------------------------


def compression_ratio(G: FiniteGroup) -> Fraction:
    """|G| / mu(G), exact."""
    return Fraction(G.order, mu_exact(G).mu)


@dataclass
class IncompressibleVerdict:
    structural_type: str  # 'cyclic-prime-power' | 'generalized-quaternion' | 'klein-four' | 'compressible'
    cr: Fraction


def _is_prime_power_int(n: int) -> bool:
    return n >= 2 and len(set(prime_factors(n))) == 1


def classify_incompressible(G: FiniteGroup) -> IncompressibleVerdict:
    """Structural incompressibility test cross-checked against cr(G) = 1."""
    if G.order == 1:
        raise DomainError("classification is defined for nontrivial groups")
    n = G.order
    orders = [G.element_order(a) for a in range(n)]
    structural = "compressible"
    if _is_prime_power_int(n) and n in orders:
        structural = "cyclic-prime-power"
    elif n == 4 and all(o <= 2 for o in orders):
        structural = "klein-four"
    elif (n >= 8 and n & (n - 1) == 0 and orders.count(2) == 1
          and n not in orders):
        # 2-group with a unique involution is cyclic or generalized quaternion
        structural = "generalized-quaternion"
    cr = compression_ratio(G)
    if (structural != "compressible") != (cr == 1):
        raise InternalInvariantError(
            f"structural type {structural} disagrees with cr = {cr}"
        )
    return IncompressibleVerdict(structural_type=structural, cr=cr)


def cr_monotonicity_check(G: FiniteGroup, H: Subgroup) -> bool:
    """cr(H) <= cr(G), equivalently mu(G) <= [G:H] mu(H)."""
    if H.parent is not G:
        raise DomainError("H must be a subgroup of G")
    Hgrp, _ = subgroup_as_group(H)
    return mu_exact(G).mu <= H.index * mu_exact(Hgrp).mu


# -- semidirect bound ------------------------------------------------------


@dataclass
class SemidirectBoundReport:
    mu_product: int
    bound: int          # |G| + mu(H)
    holds: bool
    embedding_injective: bool


def semidirect_bound_check(G: FiniteGroup, H: FiniteGroup,
                           action: Sequence[Sequence[int]],
                           cap: int = 256) -> SemidirectBoundReport:
    """mu(G semidirect H) <= |G| + mu(H); also materializes the embedding
    rho(g0,h0) = ((g -> g0 * phi_h0(g)), h0) into Sym(G) x H and verifies it
    is an injective homomorphism."""
    P = semidirect_product(G, H, action, cap=cap)
    mu_product = mu_exact(P).mu
    bound = G.order + mu_exact(H).mu
    # materialize rho and check it is a monomorphism
    nH = H.order
    images = []
    for g0 in range(G.order):
        for h0 in range(nH):
            perm = tuple(G.mul(g0, int(action[h0][g])) for g in range(G.order))
            images.append((perm, h0))
    injective = len(set(images)) == P.order
    homomorphism = True
    for x in range(P.order):
        for y in range(P.order):
            px, hx = images[x]
            py, hy = images[y]
            lhs = (tuple(px[py[g]] for g in range(G.order)), H.mul(hx, hy))
            if lhs != images[P.mul(x, y)]:
                homomorphism = False
                break
        if not homomorphism:
            break
    if not homomorphism:
        raise InternalInvariantError("semidirect embedding is not a homomorphism")
    return SemidirectBoundReport(mu_product=mu_product, bound=bound,
                                 holds=mu_product <= bound,
                                 embedding_injective=injective)


# -- socle-induced representation properties -------------------------------


@dataclass
class SocleReport:
    faithful_on_socle: bool
    per_prime_faithful: bool
    no_redundant_constituents: bool
    codimension_one: bool

    @property
    def passed(self) -> bool:
        return (self.faithful_on_socle and self.per_prime_faithful
                and self.no_redundant_constituents and self.codimension_one)


def socle_induced_properties_check(G: FiniteGroup, R: Representation) -> SocleReport:
    """For G with central socle and R a minimal-degree representation by
    meet-irreducible subgroups, verify the socle-induced representation:
    faithfulness, per-prime faithful decomposition, no redundant transitive
    constituent, and the codimension-1 intersection with each Z(G)[p]."""
    if not is_CS(G):
        raise PreconditionError("G does not have a central socle")
    mu = mu_exact(G).mu
    if degree(R) != mu or not is_faithful(R):
        raise PreconditionError("R is not a minimal-degree faithful representation")
    lat = G.lattice()
    flags = lat.meet_irreducible_flags()
    for H in R.parts:
        if not flags[lat.subgroup_index(H)]:
            raise PreconditionError("R contains a meet-reducible part")
    Z = center(G)
    soc = socle(G)
    primes = prime_factors(Z.order)
    # Z(G)[p] bitsets and their dimensions
    zp_bits = {}
    zp_dim = {}
    for p in primes:
        bits = 1
        for z in Z.elements():
            if z and G.element_order(z) == p:
                bits |= 1 << z
        zp_bits[p] = bits
        zp_dim[p] = round(math.log(popcount(bits), p))

    faithful_on_socle = True
    inter = soc.bits
    for H in R.parts:
        inter &= H.bits
    faithful_on_socle = inter & soc.bits == 1

    # assign each part to the unique prime where it misses part of Z(G)[p]
    blocks: dict[int, list[int]] = {p: [] for p in primes}
    per_prime_faithful = True
    for i, H in enumerate(R.parts):
        proper = [p for p in primes if H.bits & zp_bits[p] != zp_bits[p]]
        if len(proper) > 1:
            per_prime_faithful = False
        elif len(proper) == 1:
            blocks[proper[0]].append(i)
    if per_prime_faithful:
        for p in primes:
            inter_p = zp_bits[p]
            for i in blocks[p]:
                inter_p &= R.parts[i].bits
            if inter_p != 1:
                per_prime_faithful = False
                break

    no_redundant = True
    for p in primes:
        for i0 in blocks[p]:
            inter_p = zp_bits[p]
            for i in blocks[p]:
                if i != i0:
                    inter_p &= R.parts[i].bits
            if inter_p == 1:
                no_redundant = False

    codim_one = True
    for p in primes:
        for i in blocks[p]:
            d = round(math.log(popcount(R.parts[i].bits & zp_bits[p]), p))
            if d != zp_dim[p] - 1:
                codim_one = False

    return SocleReport(faithful_on_socle=faithful_on_socle,
                       per_prime_faithful=per_prime_faithful,
                       no_redundant_constituents=no_redundant,
                       codimension_one=codim_one)
