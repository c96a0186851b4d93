"""Exhaustive verification suites over the small corpora.

Each suite returns a ``SuiteResult``; the first counterexample found is
kept in serialisable form.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, List, Optional

from .connectivity import bits, popcount, verify_axioms
from .corpus import connected_multigraphs, matroid_corpus, random_full_rank_gf2, simple_graphs
from .decomposition import (
    branch_depth_exact,
    decomposition_from_treedepth,
    radius,
    treedepth_from_decomposition,
    width,
)
from .formats import dump_graph
from .gf import GFMatrix
from .graph import (
    cut_rank_oracle,
    edge_oracle,
    generate,
    incidence_graph,
    local_complement,
    tree_depth,
)
from .matroid import (
    circuits,
    cd_depth,
    contraction_depth,
    cycle_matroid,
    deletion_depth,
    components,
    fundamental_graph,
    longest_circuit_size,
    longest_cocircuit_size,
    uniform,
)
from .shrub import (
    decomposition_from_shrubbery,
    path_capacity,
    path_lower_bound,
    path_rank_decomposition,
    rank_depth,
    shrubbery_from_decomposition,
)
from .wqo import LabeledMatrix, find_good_pair, is_restriction, matrix_contraction_depth


@dataclass
class SuiteResult:
    name: str
    ok: bool = True
    checked: int = 0
    counterexample: Optional[dict] = None
    stats: Dict[str, object] = field(default_factory=dict)
    seconds: float = 0.0

    def fail(self, **info) -> None:
        if self.ok:
            self.ok = False
            self.counterexample = info

    def to_dict(self) -> dict:
        return asdict(self)


def _graph_info(g) -> dict:
    return {"name": g.name, "graph": dump_graph(g)}


def td_bound(k: int) -> int:
    return max(2 * k * k - k + 1, 2)


# -- graphs ------------------------------------------------------------------------------

def suite_main_td(max_size: int = 6, seed: int = 0) -> SuiteResult:
    """bd - 1 <= td <= max(2bd^2 - bd + 1, 2) on connected graphs with <= max_size edges,
    plus both constructive conversions."""
    res = SuiteResult("main-td")
    for g in connected_multigraphs(max_size):
        k, _ = branch_depth_exact(edge_oracle(g), cap=max(10, g.m))
        t, forest = tree_depth(g)
        res.checked += 1
        if not k - 1 <= t <= td_bound(k):
            res.fail(**_graph_info(g), bd=k, td=t)
        if g.m >= 2:
            dec = decomposition_from_treedepth(g, forest)
            if width(dec, edge_oracle(g)) > t or radius(dec) > t:
                res.fail(**_graph_info(g), td=t, step="decomposition from elimination forest")
            _, best = branch_depth_exact(edge_oracle(g), cap=max(10, g.m))
            bound, f2 = treedepth_from_decomposition(g, best)
            if not f2.closure_contains(g) or f2.height() > bound or bound > td_bound(k):
                res.fail(**_graph_info(g), bd=k, step="elimination forest from decomposition")
    res.stats["graphs"] = res.checked
    return res


def suite_rd_to_td(max_size: int = 4, seed: int = 0) -> SuiteResult:
    """rd(G) <= rd(I(G)) <= td(G) for all simple graphs with <= max_size vertices."""
    res = SuiteResult("rd-to-td")
    for g in simple_graphs(max_size):
        rd = rank_depth(g)[0]
        inc = incidence_graph(g)
        rdi = rank_depth(inc, cap=max(10, inc.n))[0]
        td = tree_depth(g)[0]
        res.checked += 1
        if not rd <= rdi <= td:
            res.fail(**_graph_info(g), rd=rd, rd_incidence=rdi, td=td)
    return res


def suite_shrub(max_size: int = 6, seed: int = 0) -> SuiteResult:
    """Exact decomposition -> shrubbery -> decomposition on simple graphs."""
    res = SuiteResult("shrub")
    loops = 0
    for g in simple_graphs(max_size, min_n=2):
        rd, dec = rank_depth(g)
        build = shrubbery_from_decomposition(g, dec)
        s = build.shrubbery
        back = decomposition_from_shrubbery(s, g)
        res.checked += 1
        loops += build.loops_needed
        if s.depth != dec.radius():
            res.fail(**_graph_info(g), depth=s.depth, radius=dec.radius())
        w = width(back, cut_rank_oracle(g))
        if w > s.n_colors or back.radius() > s.depth:
            res.fail(**_graph_info(g), width=w, colors=s.n_colors)
    res.stats["hosts_with_loops"] = loops
    return res


def suite_path(max_size: int = 10, seed: int = 0) -> SuiteResult:
    res = SuiteResult("path")
    for n in range(2, max_size + 1):
        rd = rank_depth(generate("path", n))[0]
        res.checked += 1
        res.stats[f"rd(P{n})"] = rd
        if not rd > path_lower_bound(n):
            res.fail(n=n, rd=rd, bound=path_lower_bound(n))
    for n in range(2, 21):
        for w in range(2, 5):
            if path_capacity(w) >= n:
                dec = path_rank_decomposition(n, w)
                res.checked += 1
                if width(dec, cut_rank_oracle(generate("path", n))) > w or dec.radius() > w:
                    res.fail(n=n, w=w)
    return res


def suite_axioms(max_size: int = 6, seed: int = 0) -> SuiteResult:
    """Local complementation keeps the cut-rank function; axioms for every oracle."""
    res = SuiteResult("axioms")
    for g in simple_graphs(max_size):
        rho = cut_rank_oracle(g).table()
        for v in g.vertices:
            if cut_rank_oracle(local_complement(g, v)).table() != rho:
                res.fail(**_graph_info(g), vertex=v, check="local complementation")
        rep = verify_axioms(cut_rank_oracle(g))
        if not rep:
            res.fail(**_graph_info(g), check="cut-rank axioms", axiom=rep.axiom)
        res.checked += 1
    for g in connected_multigraphs(max_size):
        rep = verify_axioms(edge_oracle(g))
        if not rep:
            res.fail(**_graph_info(g), check="edge axioms", axiom=rep.axiom)
        res.checked += 1
    for recipe in matroid_corpus(seed=seed):
        rep = verify_axioms(recipe.build().oracle())
        if not rep:
            res.fail(matroid=recipe.to_dict(), check="matroid axioms", axiom=rep.axiom)
        res.checked += 1
    return res


# -- matroids ------------------------------------------------------------------------------

def suite_cd_bounds(max_size: int = 9, seed: int = 0) -> SuiteResult:
    """log2 c <= cd <= c(c+1)/2 and the dual statement for dd."""
    res = SuiteResult("cd-bounds")
    for recipe in matroid_corpus(max_elements=max_size, seed=seed):
        m = recipe.build()
        c = longest_circuit_size(m)
        cs = longest_cocircuit_size(m)
        cd = contraction_depth(m).value
        dd = deletion_depth(m).value
        res.checked += 1
        if not math.log2(c) <= cd <= c * (c + 1) // 2:
            res.fail(matroid=recipe.to_dict(), c=c, cd=cd)
        if not math.log2(cs) <= dd <= cs * (cs + 1) // 2:
            res.fail(matroid=recipe.to_dict(), cstar=cs, dd=dd)
    return res


def suite_constants(max_size: int = 6, seed: int = 0) -> SuiteResult:
    """Fixed depth values of the small separating examples; U_{n-1,n} for n = 3..max_size."""
    res = SuiteResult("constants")
    k3p = cycle_matroid(generate("k3_plus"))
    k3pp = cycle_matroid(generate("k3_plus_plus"))
    c33 = cycle_matroid(generate("multicycle", 3, 3))
    cap = 13
    checks = [
        ("dd(M(K3+))", deletion_depth(k3p).value, 3),
        ("dd(M(K3+)/e)", deletion_depth(k3p.contract(1 << k3p.ground.index("e"))).value, 4),
        ("cdd(M(K3++))", cd_depth(k3pp, cap).value, 3),
        ("cdd(M(K3++)/f)", cd_depth(k3pp.contract(1 << k3pp.ground.index("f")), cap).value, 4),
        ("bd(M(C3,3))", branch_depth_exact(c33.oracle())[0], 2),
        ("cdd(M(C3,3))", cd_depth(c33).value, 3),
    ]
    checks += [(f"dd(U{n - 1},{n})", deletion_depth(uniform(n - 1, n)).value, 2) for n in range(3, max_size + 1)]
    for name, got, want in checks:
        res.checked += 1
        res.stats[name] = got
        if got != want:
            res.fail(value=name, got=got, expected=want)
    return res


def _longest_circuit(m) -> int:
    cs = circuits(m)
    return max(cs, key=lambda c: (popcount(c), -c)) if cs else 0


def _longest(m) -> int:
    return max((popcount(d) for d in circuits(m)), default=0)


def suite_seymour(max_size: int = 9, seed: int = 0) -> SuiteResult:
    """Contracting a longest circuit of a connected matroid leaves only shorter
    circuits (checked on every component); contracting any element keeps a
    circuit of at least half the length of a longest one."""
    res = SuiteResult("seymour")
    for recipe in matroid_corpus(max_elements=max_size, seed=seed):
        m = recipe.build()
        for comp in components(m):
            sub = m.restrict(comp)
            c = _longest_circuit(sub)
            if c and _longest(sub.contract(c)) >= popcount(c):
                res.fail(matroid=recipe.to_dict(), component=comp, circuit=c, check="contract longest circuit")
        c = _longest_circuit(m)
        if popcount(c) >= 2:
            for e in range(m.n):
                if 2 * _longest(m.contract(1 << e)) < popcount(c):
                    res.fail(matroid=recipe.to_dict(), element=e, circuit=c, check="circuit halving")
        res.checked += 1
    return res


def suite_fund(max_size: int = 8, seed: int = 0) -> SuiteResult:
    """bd(M) = rd(fundamental graph) for every base of every binary corpus matroid."""
    res = SuiteResult("fund")
    for recipe in matroid_corpus(seed=seed):
        if recipe.kind != "linear" or recipe.p != 2 or recipe.ncols > max_size:
            continue
        m = recipe.build()
        k = branch_depth_exact(m.oracle())[0]
        for b in m.bases():
            rd = rank_depth(fundamental_graph(m, b))[0]
            res.checked += 1
            if rd != k:
                res.fail(matroid=recipe.to_dict(), base=b, bd=k, rd=rd)
    return res


def suite_chain(max_size: int = 8, seed: int = 0) -> SuiteResult:
    """bd(M) <= cdd(M) <= min(cd(M), dd(M))."""
    res = SuiteResult("chain")
    for recipe in matroid_corpus(max_elements=max_size, seed=seed):
        m = recipe.build()
        bd = branch_depth_exact(m.oracle())[0]
        cdd = cd_depth(m).value
        cd = contraction_depth(m).value
        dd = deletion_depth(m).value
        res.checked += 1
        if not bd <= cdd <= min(cd, dd):
            res.fail(matroid=recipe.to_dict(), bd=bd, cdd=cdd, cd=cd, dd=dd)
    return res


# -- restriction order --------------------------------------------------------------------

def cycle_matrix(n: int) -> LabeledMatrix:
    """Reduced incidence matrix of C_n over GF(2) (last vertex row dropped)."""
    rows = [[1 if j in (i, (i - 1) % n) else 0 for j in range(n)] for i in range(n - 1)]
    return LabeledMatrix(GFMatrix.from_rows(rows, 2, ncols=n), name=f"C{n}")


def brute_restriction(n1: LabeledMatrix, n2: LabeledMatrix) -> bool:
    """Every injection, then matroid agreement on every subset and equal RREF."""
    c1 = n1.ncols
    if n1.p != n2.p:
        return False
    m1 = n1.matroid()
    m2 = n2.matroid()
    target = n1.matrix.nonzero_rref()
    for phi in itertools.permutations(range(n2.ncols), c1):
        if any(not n1.labels[i] <= n2.labels[j] for i, j in enumerate(phi)):
            continue
        if any(m1.rank(x) != m2.rank(sum(1 << phi[i] for i in bits(x))) for x in range(1 << c1)):
            continue
        sub = n2.matrix.columns(phi)
        if sub.rank() == n1.matrix.nrows and sub.nonzero_rref() == target:
            return True
    return False


def suite_wqo(max_size: int = 40, seed: int = 0, seeds: int = 100, agreement_pairs: int = 300) -> SuiteResult:
    res = SuiteResult("wqo")
    cycles = [cycle_matrix(n) for n in (3, 4, 5)]
    if find_good_pair(cycles) is not None:
        res.fail(check="cycle antichain", pair=find_good_pair(cycles))
    res.checked += 1
    lengths = []
    for s in range(seed, seed + seeds):
        rng = random.Random(s)
        seq: List[LabeledMatrix] = []
        found = None
        while len(seq) < max_size and found is None:
            cand = LabeledMatrix(random_full_rank_gf2(rng))
            if matrix_contraction_depth(cand) > 2:
                continue
            seq.append(cand)
            found = find_good_pair(seq)
        res.checked += 1
        if found is None:
            res.fail(check="random sequence", seed=s, length=len(seq))
        else:
            lengths.append(len(seq))
    res.stats["max_length_to_good_pair"] = max(lengths, default=0)
    rng = random.Random(seed)
    for _ in range(agreement_pairs):
        a = LabeledMatrix(random_full_rank_gf2(rng, max_cols=4))
        b = LabeledMatrix(random_full_rank_gf2(rng, max_cols=6))
        fast = is_restriction(a, b) is not None
        res.checked += 1
        if fast != brute_restriction(a, b):
            res.fail(check="oracle agreement", n1=[list(r) for r in a.matrix.rows], n2=[list(r) for r in b.matrix.rows])
    return res


def measure_uniform_cd(max_n: int = 6) -> Dict[int, int]:
    """cd(U_{n-1,n}) for n = 2..max_n."""
    return {n: contraction_depth(uniform(n - 1, n)).value for n in range(2, max_n + 1)}


SUITES: Dict[str, Callable[..., SuiteResult]] = {
    "main-td": suite_main_td,
    "rd-to-td": suite_rd_to_td,
    "shrub": suite_shrub,
    "path": suite_path,
    "axioms": suite_axioms,
    "constants": suite_constants,
    "cd-bounds": suite_cd_bounds,
    "seymour": suite_seymour,
    "fund": suite_fund,
    "chain": suite_chain,
    "wqo": suite_wqo,
}


def run_suite(name: str, max_size: Optional[int] = None, seed: int = 0) -> SuiteResult:
    fn = SUITES[name]
    start = time.perf_counter()
    res = fn(seed=seed) if max_size is None else fn(max_size=max_size, seed=seed)
    res.seconds = round(time.perf_counter() - start, 3)
    return res
