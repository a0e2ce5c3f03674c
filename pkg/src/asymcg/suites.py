"""Seeded property campaigns.

Each suite draws its samples from ``random.Random`` streams derived from the
seed and the shard index, so a run is reproducible from ``(seed, count,
shards)`` alone.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import fock, gaussian as gm, thompson as tv
from .homology import (
    GENERATOR_NAMES,
    HomClass,
    compose_ops,
    dehn_twist,
    generator_shadow,
    is_symplectic,
    power_op,
    word_shadow,
)
from .surface import admissible_from_subtree, loop_class, pants_curves
from .tree import (
    FiniteSubtree,
    ROOT_EDGES,
    enumerate_subtrees,
    random_subtree,
)
from .words import Term

RIGID = ("alpha", "beta", "pi")


def random_edge(rng, max_depth: int = 3) -> str:
    return rng.choice(ROOT_EDGES) + "".join(rng.choice("LR") for _ in range(rng.randint(0, max_depth)))


def random_term(rng) -> Term:
    exponent = rng.choice((1, 1, 1, -1, -1, 2, -2))
    roll = rng.random()
    if roll < 0.75:
        return Term(rng.choice(GENERATOR_NAMES), (), exponent)
    if roll < 0.85:
        j = random_edge(rng)
        k = random_edge(rng)
        while k == j:
            k = random_edge(rng)
        return Term("tw", (j, k), exponent)
    if roll < 0.93:
        v = rng.choice(("*", random_edge(rng)))
        return Term("tv", (random_edge(rng), v), exponent)
    loop = rng.choice(("a", "b"))
    return Term("td", (f"{loop}[{random_edge(rng)}]",), exponent)


def random_word(rng, max_len: int = 20) -> tuple:
    return tuple(random_term(rng) for _ in range(rng.randint(0, max_len)))


def inverse_word(word) -> tuple:
    return tuple(Term(t.name, t.args, -t.exponent) for t in reversed(word))


def random_pure_word(rng, max_len: int = 8) -> tuple:
    """A word with trivial V-image: a product of conjugated twists."""
    out: tuple = ()
    for _ in range(rng.randint(0, 3)):
        conj = tuple(Term(rng.choice(RIGID), (), rng.choice((1, -1)))
                     for _ in range(rng.randint(0, 3)))
        twists = []
        while len(twists) < max(1, max_len // 3):
            t = random_term(rng)
            if t.name not in RIGID:
                twists.append(t)
        out += conj + tuple(twists) + inverse_word(conj)
    return out


@dataclass
class SuiteResult:
    name: str
    seed: int
    count: int
    checks: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, message: str):
        if len(self.failures) < 20:
            self.failures.append(message)
        else:
            self.failures[-1] = f"... {message}"

    def check(self, ok: bool, message: str):
        self.checks += 1
        if not ok:
            self.fail(message)

    def merge(self, other: "SuiteResult"):
        self.checks += other.checks
        for f in other.failures:
            self.fail(f)

    def to_json(self) -> dict:
        return {"suite": self.name, "seed": self.seed, "count": self.count,
                "passed": self.passed, "checks": self.checks,
                "failures": list(self.failures), "seconds": round(self.seconds, 3)}


def _fmt(word) -> str:
    return " ".join(map(str, word))


# -- suites ---------------------------------------------------------------

def suite_euler(rng, count, res):
    if rng.shard == 0:
        for t in enumerate_subtrees(8):
            s = admissible_from_subtree(t)
            frontier = len(t.leaf_set())
            res.check(s.boundary_count == s.genus + 3 and frontier == s.boundary_count
                      and s.genus == len(t.internal),
                      f"n != g + 3 on {t}")
    for _ in range(count):
        t = random_subtree(rng, rng.randint(9, 40))
        s = admissible_from_subtree(t)
        res.check(s.boundary_count == s.genus + 3 == len(t.leaf_set()), f"n != g + 3 on {t}")


def suite_thompson(rng, count, res):
    e = tv.TreePair.identity()
    for _ in range(count):
        g, h, k = (tv.random_tree_pair(rng, 12) for _ in range(3))
        res.check(tv.compose(g, tv.compose(h, k)) == tv.compose(tv.compose(g, h), k),
                  f"associativity fails on {g}, {h}, {k}")
        res.check(tv.compose(g, e) == g == tv.compose(e, g), f"identity fails on {g}")
        res.check(tv.compose(g, tv.invert(g)) == e == tv.compose(tv.invert(g), g),
                  f"inverse fails on {g}")


def suite_torsion(rng, count, res):
    res.check(tv.order(tv.ALPHA_V, 10) == 4, "order(alpha_V) != 4")
    res.check(tv.order(tv.BETA_V, 10) == 3, "order(beta_V) != 3")
    res.check(tv.is_circular(tv.ALPHA_V), "alpha_V not circular")
    res.check(tv.is_circular(tv.BETA_V), "beta_V not circular")
    res.check(not tv.is_circular(tv.PI_V), "pi_V circular")


def suite_exact_sequence(rng, count, res):
    for _ in range(count):
        w = random_word(rng)
        f = word_shadow(w)
        image = tv.project(w)
        res.check(f.end_map == image, f"end map differs from V-image for {_fmt(w)!r}")
        kernel = tv.is_identity(f.end_map)
        res.check(kernel == tv.is_identity(image), f"kernel test differs for {_fmt(w)!r}")
        # far wrists are carried rigidly by the V-image
        for _ in range(3):
            leaf = rng.choice(sorted(f.support.leaf_set()))
            edge = leaf + "".join(rng.choice("LR") for _ in range(rng.randint(0, 3)))
            moved = tv.edge_action(image, edge)
            res.check(f.image_of(("a", edge)) == HomClass.a(moved)
                      and f.image_of(("b", edge)) == HomClass.b(moved),
                      f"far wrist {edge} not carried rigidly for {_fmt(w)!r}")


def suite_symplectic(rng, count, res):
    for _ in range(count):
        w = random_word(rng, 20)
        res.check(is_symplectic(word_shadow(w)), f"not symplectic: {_fmt(w)!r}")


def suite_alpha4(rng, count, res):
    res.check(word_shadow("alpha^4").is_identity(), "alpha^4 shadow is not the identity")
    res.check(word_shadow("alpha alpha alpha alpha") == word_shadow("t0"),
              "alpha^4 differs from t0")
    res.check(tv.is_identity(tv.power(tv.ALPHA_V, 4)), "alpha_V^4 is not the identity")


def suite_blocks(rng, count, res):
    for _ in range(count):
        w = random_word(rng, 20)
        f = word_shadow(w)
        b = fock.to_blocks(f)
        res.check(fock.check_relations(b), f"block relations fail for {_fmt(w)!r}")
        genus = admissible_from_subtree(f.support).genus
        res.check(fock.psi_rank(b) <= 2 * genus, f"psi rank over 2g for {_fmt(w)!r}")


def suite_bform(rng, count, res):
    support = random_subtree(rng, 7) if rng.shard else FiniteSubtree.closure(
        ["0", "1", "2", "1L", "1R", "0L"])
    wrists = support.wrists()
    res.check(len(wrists) == 6, "support does not have 6 wrists")
    one, zero, i = gm.ONE, gm.ZERO, gm.I
    for k in wrists:
        for l in wrists:
            d = one if k == l else zero
            ek, el = {("e", k): one}, {("e", l): one}
            fk, fl = {("f", k): one}, {("f", l): one}
            res.check(fock.b_form(ek, el) == d, f"B(e_{k}, e_{l})")
            res.check(fock.b_form(fk, fl) == -d, f"B(f_{k}, f_{l})")
            res.check(fock.b_form(ek, fl) == zero and fock.b_form(fk, el) == zero,
                      f"B(e_{k}, f_{l})")
            res.check(fock.omega_c(ek, fl) == i * d, f"omega_C(e_{k}, f_{l})")
            res.check(fock.omega_c(ek, el) == zero and fock.omega_c(fk, fl) == zero,
                      f"omega_C on e/e or f/f at {k}, {l}")


def suite_cocycle(rng, count, res):
    for _ in range(count):
        ws = [random_word(rng, 8) for _ in range(3)]
        g, h, k = (word_shadow(w) for w in ws)
        c = fock.c1_cocycle
        lhs = c(g, h) * c(compose_ops(g, h), k)
        rhs = c(g, compose_ops(h, k)) * c(h, k)
        res.check(lhs == rhs, "cocycle identity fails for %r" % [_fmt(w) for w in ws])


def suite_coboundary(rng, count, res):
    for _ in range(count):
        ws = [random_pure_word(rng) for _ in range(2)]
        g, h = (word_shadow(w) for w in ws)
        c1 = fock.c1_cocycle(g, h)
        z = complex(c1)
        lhs = fock.ell(g) * fock.ell(h) / fock.ell(compose_ops(g, h))
        res.check(abs(lhs - z / abs(z)) < 1e-9, "coboundary identity fails for %r" % ws)
        res.check(abs(fock.cn_cocycle(g, h, 1) - z) < 1e-9, "C_1 float/exact mismatch")


def suite_sl2(rng, count, res):
    ma = generator_shadow("t_a1").block
    mb = generator_shadow("t_b1").block

    def mul(x, y):
        return [[sum(x[i][k] * y[k][j] for k in range(2)) for j in range(2)] for i in range(2)]

    p = mul(ma, mb)
    acc = [[1, 0], [0, 1]]
    for _ in range(6):
        acc = mul(acc, p)
    res.check(acc == [[1, 0], [0, 1]], f"(M_a M_b)^6 = {acc}")
    res.check(power_op(word_shadow("t_a1 t_b1"), 6).is_identity(), "(t_a1 t_b1)^6 shadow")


def suite_separating(rng, count, res):
    for name in ("t", "t0"):
        res.check(generator_shadow(name).is_identity(), f"{name} is not the identity")
    trees = [FiniteSubtree.closure(["1"])] + [random_subtree(rng, rng.randint(1, 10))
                                                for _ in range(max(1, count))]
    for t in trees:
        for c in pants_curves(t):
            res.check(dehn_twist(loop_class(c)).is_identity(), f"twist along {c} acts")


SUITES = {
    "euler": (suite_euler, 10_000),
    "thompson": (suite_thompson, 1000),
    "torsion": (suite_torsion, 1),
    "exact-sequence": (suite_exact_sequence, 1000),
    "symplectic": (suite_symplectic, 1000),
    "alpha4": (suite_alpha4, 1),
    "blocks": (suite_blocks, 1000),
    "bform": (suite_bform, 1),
    "cocycle": (suite_cocycle, 500),
    "coboundary": (suite_coboundary, 500),
    "sl2": (suite_sl2, 1),
    "separating": (suite_separating, 20),
}


def shard_random(seed: int, shard: int) -> random.Random:
    """Independent stream for one shard; ``rng.shard`` records its index."""
    rng = random.Random(f"{seed}/{shard}")
    rng.shard = shard
    return rng


def _run_shard(name: str, seed: int, count: int, shard: int) -> SuiteResult:
    fn, _ = SUITES[name]
    res = SuiteResult(name, seed, count)
    fn(shard_random(seed, shard), count, res)
    return res


def run(name: str, seed: int = 0, count: int | None = None, shards: int = 1,
        workers: int = 1) -> SuiteResult:
    """Run one suite; ``count`` defaults to the suite's acceptance size."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    count = SUITES[name][1] if count is None else count
    shards = max(1, shards)
    per = [count // shards + (1 if s < count % shards else 0) for s in range(shards)]
    start = time.perf_counter()
    out = SuiteResult(name, seed, count)
    if workers > 1 and shards > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_shard, [name] * shards, [seed] * shards, per,
                                  range(shards)))
    else:
        parts = [_run_shard(name, seed, per[s], s) for s in range(shards)]
    for part in parts:
        out.merge(part)
    out.seconds = time.perf_counter() - start
    return out
