"""Finite chains of algebra inclusions and continuity of their homology.

A DirectSystem is an ordered list of algebras with injective multiplicative
maps between consecutive stages; the final stage plays the role of the limit.
The continuity statements verified here are image-filtration statements: the
classes coming from earlier stages sit inside the homology of the final
stage, the filtration grows with the stage, and the last stage fills it.

Periodic continuity is gated the same way single-algebra reports are: every
stage must carry a vanishing certificate, a common bound is taken, and the
periodic dimensions are read off at the stabilized cyclic degrees.
"""

from dataclasses import dataclass

from .algebra import AlgebraHom, group_algebra, hecke_algebra, hecke_inclusion
from .errors import CertMissing, NotAChain, NotInjective, ValidationError
from .homology import (cyclic_homology, hochschild_homology,
                       homology_representatives, periodic_via_stabilization,
                       stabilization_certificate, total_components,
                       total_differential)
from .linalg import SparseMatrix, rank, solve_columns
from .mixed import build_mixed_complex, induced_chain_map


class DirectSystem:
    """Stages A_1 -> A_2 -> ... -> A_m with composites to the final stage.

    Every map is validated to be multiplicative and injective at
    construction; to_final[i] is the composite A_i -> A_m (identity at the
    last stage), so consistency of composites holds by construction.
    """

    __slots__ = ("stages", "maps", "to_final")

    def __init__(self, stages, maps):
        stages = tuple(stages)
        maps = tuple(maps)
        if not stages:
            raise ValidationError("a direct system needs at least one stage")
        if len(maps) != len(stages) - 1:
            raise ValidationError(
                f"{len(stages)} stages need {len(stages) - 1} maps")
        for i, f in enumerate(maps):
            if f.matrix.cols != stages[i].dim or \
                    f.matrix.rows != stages[i + 1].dim:
                raise ValidationError(f"map {i} has the wrong shape")
            f.validate()
            if not f.is_injective():
                raise NotInjective(f"stage map {i} is not injective")
        self.stages = stages
        self.maps = maps
        final = stages[-1]
        to_final = [identity_hom(final)]
        for i in range(len(maps) - 1, -1, -1):
            to_final.append(to_final[-1].compose(maps[i]))
        self.to_final = tuple(reversed(to_final))

    def __len__(self):
        return len(self.stages)

    def __repr__(self):
        dims = ", ".join(str(a.dim) for a in self.stages)
        return f"DirectSystem(dims=[{dims}])"


def identity_hom(a):
    return AlgebraHom(a, a, SparseMatrix.identity(a.dim))


def constant_system(a, length):
    """The system A -> A -> ... -> A along identity maps."""
    if length < 1:
        raise ValidationError("length must be at least 1")
    return DirectSystem([a] * length, [identity_hom(a)] * (length - 1))


def hecke_tower(g, chain):
    """Stages hecke_algebra(G, K_i) along a decreasing subgroup chain.

    chain lists the element sets K_1 >= K_2 >= ... and must end with the
    trivial subgroup, where the stage is the full group algebra.
    """
    chain = [sorted(set(k)) for k in chain]
    if not chain:
        raise NotAChain("empty subgroup chain")
    for i in range(len(chain) - 1):
        if not set(chain[i + 1]) <= set(chain[i]):
            raise NotAChain(f"subgroup {i + 1} is not contained in subgroup {i}")
    if chain[-1] != [g.identity]:
        raise NotAChain("chain must end at the trivial subgroup")
    stages = [hecke_algebra(g, k)[0] for k in chain[:-1]]
    stages.append(group_algebra(g))
    maps = [hecke_inclusion(g, chain[i], chain[i + 1],
                            source=stages[i], target=stages[i + 1])
            for i in range(len(chain) - 1)]
    return DirectSystem(stages, maps)


def _induced_total_map(maps, src_mc, dst_mc, n):
    """Block-diagonal chain map on Tot_n from degree-wise chain maps."""
    comps = total_components(n)
    grid = [[None] * len(comps) for _ in comps]
    for i, q in enumerate(comps):
        grid[i][i] = maps[q]
    return SparseMatrix.from_blocks(
        grid,
        [dst_mc.spaces[q].dim for q in comps],
        [src_mc.spaces[q].dim for q in comps])


def _pushed_columns(reps, push):
    return [push.apply(v) for v in reps]


@dataclass(frozen=True, eq=False)
class TowerHomology:
    """Per-stage reports plus the maps induced on homology into the final stage.

    induced[i][n] expresses the pushforward of stage i's degree-n class
    representatives in the final stage's representative basis.
    """

    theory: str
    max_degree: int
    reports: tuple
    induced: tuple


def homology_of_stages(ds, theory, max_degree):
    """Stage-by-stage reports and induced maps on homology.

    Induced maps are computed by pushing representative cycles through the
    composite chain map and solving against the final stage's boundaries
    plus representatives; the coordinates on the representative block are
    unique, so the matrices are well-defined.
    """
    if theory not in ("HH", "HC"):
        raise ValidationError(f"unknown theory {theory!r}")
    compute = hochschild_homology if theory == "HH" else cyclic_homology
    mcs = [build_mixed_complex(a, max_degree + 1) for a in ds.stages]
    reports = tuple(compute(a, max_degree, mc=mc, representatives=True)
                    for a, mc in zip(ds.stages, mcs))
    final_mc = mcs[-1]
    final_reps = reports[-1].representatives
    induced = []
    for i in range(len(ds)):
        chain_maps = induced_chain_map(ds.to_final[i], max_degree)
        per_degree = {}
        for n in range(max_degree + 1):
            if theory == "HH":
                push = chain_maps[n]
                d_in = final_mc.b_tilde[n + 1]
                ambient = final_mc.spaces[n].dim
            else:
                push = _induced_total_map(chain_maps, mcs[i], final_mc, n)
                d_in = total_differential(final_mc, n + 1)
                ambient = sum(final_mc.spaces[q].dim
                              for q in total_components(n))
            basis = final_reps[n]
            stacked = SparseMatrix.hstack(
                [d_in, SparseMatrix.from_columns(ambient, list(basis))])
            pushed = _pushed_columns(reports[i].representatives[n], push)
            sols = solve_columns(stacked, pushed)
            cols = []
            for s in sols:
                if s is None:
                    raise ValidationError(
                        "pushed class escaped the final homology basis")
                cols.append({k - d_in.cols: v for k, v in s.items()
                             if k >= d_in.cols})
            per_degree[n] = SparseMatrix.from_columns(len(basis), cols)
        induced.append(per_degree)
    return TowerHomology(theory, max_degree, reports, tuple(induced))


@dataclass(frozen=True)
class ContinuityReport:
    """Image filtration of stage homology inside the final stage.

    image_filtration[i][n] is the dimension of the image of stage i's
    degree-n homology in the final stage.  The union over all stages equals
    the final dimension outright (the last stage maps by the identity), so
    the verdict is structural; the filtration is the informative content.
    """

    theory: str
    max_degree: int
    final_dims: tuple
    image_filtration: tuple
    union_dims: tuple
    verdict: tuple

    @property
    def monotone(self):
        for n in range(self.max_degree + 1):
            dims = [row[n] for row in self.image_filtration]
            if any(a > b for a, b in zip(dims, dims[1:])):
                return False
        return True

    @property
    def all_pass(self):
        return all(self.verdict) and self.monotone


def _image_dims(ds, mcs, final_report, theory, max_degree):
    """Rank of (boundaries + pushed stage cycles) minus boundary rank."""
    final_mc = mcs[-1]
    rows = []
    for i in range(len(ds) - 1):
        chain_maps = induced_chain_map(ds.to_final[i], max_degree)
        dims = []
        for n in range(max_degree + 1):
            reps = homology_representatives(mcs[i], theory, n)
            if theory == "HH":
                push = chain_maps[n]
                d_in = final_mc.b_tilde[n + 1]
            else:
                push = _induced_total_map(chain_maps, mcs[i], final_mc, n)
                d_in = total_differential(final_mc, n + 1)
            if not reps:
                dims.append(0)
                continue
            pushed = _pushed_columns(reps, push)
            ambient = d_in.rows
            stacked = SparseMatrix.hstack(
                [d_in, SparseMatrix.from_columns(ambient, pushed)])
            dims.append(rank(stacked) - final_report.boundary_ranks[n + 1])
        rows.append(tuple(dims))
    rows.append(tuple(final_report.dims))
    return tuple(rows)


def continuity_check(ds, theory, max_degree):
    """Compare the union of stage images with the final stage's homology."""
    if theory not in ("HH", "HC"):
        raise ValidationError(f"unknown theory {theory!r}")
    compute = hochschild_homology if theory == "HH" else cyclic_homology
    mcs = [build_mixed_complex(a, max_degree + 1) for a in ds.stages]
    final_report = compute(ds.stages[-1], max_degree, mc=mcs[-1])
    filtration = _image_dims(ds, mcs, final_report, theory, max_degree)
    union = tuple(final_report.dims)
    verdict = tuple(u == f for u, f in zip(union, final_report.dims))
    return ContinuityReport(theory, max_degree, tuple(final_report.dims),
                            filtration, union, verdict)


@dataclass(frozen=True)
class HpContinuityReport:
    """Stage-wise periodic dimensions under a common vanishing bound.

    stage_even/stage_odd are the periodic dimensions per stage, read at the
    common stabilized degrees; the filtrations are image dimensions of stage
    cyclic homology inside the final stage at those two degrees.
    """

    common_bound: int
    even_degree: int
    odd_degree: int
    checked_through: int
    certificates: tuple
    stage_even: tuple
    stage_odd: tuple
    even_filtration: tuple
    odd_filtration: tuple

    @property
    def final_even(self):
        return self.stage_even[-1]

    @property
    def final_odd(self):
        return self.stage_odd[-1]

    @property
    def monotone(self):
        return (all(a <= b for a, b in
                    zip(self.even_filtration, self.even_filtration[1:]))
                and all(a <= b for a, b in
                        zip(self.odd_filtration, self.odd_filtration[1:])))


def hp_continuity_check(ds, max_degree):
    """Periodic dimensions along the tower under a common certificate.

    Every stage must admit a vanishing certificate within max_degree; the
    common bound is the largest stage bound, and the periodic dimensions of
    all stages are read at the degrees stabilized by that common bound.
    Raises CertMissing when any stage lacks a certificate or the stabilized
    degrees do not fit under the truncation.
    """
    mcs = [build_mixed_complex(a, max_degree + 1) for a in ds.stages]
    hh_reports = [hochschild_homology(a, max_degree, mc=mc)
                  for a, mc in zip(ds.stages, mcs)]
    certs = []
    for i, (a, hh) in enumerate(zip(ds.stages, hh_reports)):
        cert = stabilization_certificate(a, max_degree, hh_report=hh)
        if cert is None:
            raise CertMissing(
                f"stage {i} has no vanishing certificate within {max_degree}")
        certs.append(cert)
    common = max(c.vanishing_bound for c in certs)
    even_deg = 2 * (common // 2 + 1)
    odd_deg = even_deg + 1
    if odd_deg > max_degree:
        raise CertMissing(
            f"common bound {common} stabilizes at degrees {even_deg}, "
            f"{odd_deg}, beyond truncation {max_degree}")
    hc_reports = [cyclic_homology(a, max_degree, mc=mc)
                  for a, mc in zip(ds.stages, mcs)]
    stage_even = []
    stage_odd = []
    for a, mc, hh, hc in zip(ds.stages, mcs, hh_reports, hc_reports):
        hp = periodic_via_stabilization(a, max_degree, mc=mc,
                                        hh_report=hh, hc_report=hc)
        at_common = (hc.dims[even_deg], hc.dims[odd_deg])
        if hp.dims != at_common:
            raise ValidationError(
                "stabilized cyclic dimensions disagree between the stage "
                "bound and the common bound")
        stage_even.append(at_common[0])
        stage_odd.append(at_common[1])
    final_hc = hc_reports[-1]
    even_filt = []
    odd_filt = []
    for i in range(len(ds) - 1):
        chain_maps = induced_chain_map(ds.to_final[i], max_degree)
        per = []
        for deg in (even_deg, odd_deg):
            reps = homology_representatives(mcs[i], "HC", deg)
            if not reps:
                per.append(0)
                continue
            push = _induced_total_map(chain_maps, mcs[i], mcs[-1], deg)
            d_in = total_differential(mcs[-1], deg + 1)
            stacked = SparseMatrix.hstack(
                [d_in, SparseMatrix.from_columns(
                    d_in.rows, _pushed_columns(reps, push))])
            per.append(rank(stacked) - final_hc.boundary_ranks[deg + 1])
        even_filt.append(per[0])
        odd_filt.append(per[1])
    even_filt.append(final_hc.dims[even_deg])
    odd_filt.append(final_hc.dims[odd_deg])
    return HpContinuityReport(
        common_bound=common, even_degree=even_deg, odd_degree=odd_deg,
        checked_through=max_degree, certificates=tuple(certs),
        stage_even=tuple(stage_even), stage_odd=tuple(stage_odd),
        even_filtration=tuple(even_filt), odd_filtration=tuple(odd_filt))
