"""Exhaustive reference solver for small instances.

Enumerates every scaled set and every target graph on the pairs it touches,
then asks the LP. Shares only recognize and conscal with the real solvers.
"""
import time
import logging
from itertools import combinations, product
from dataclasses import dataclass

import networkx as nx

from diskscale import DEFAULTS, DEFAULT_SEED
from diskscale.errors import OracleBudgetError
from diskscale.geometry import GraphClass, Instance
from diskscale.graphs import recognize
from diskscale.lp import ConscalInput, conscal
from diskscale.models import SolveStats, SolveOutcome, Deadline


@dataclass(frozen=True)
class OracleBudget():
    max_n: int = DEFAULTS['oracle_budget']['max_n']
    max_k: int = DEFAULTS['oracle_budget']['max_k']
    max_lp_calls: int = DEFAULTS['oracle_budget']['max_lp_calls']

    def admits(self, inst: Instance) -> bool:
        return inst.n <= self.max_n and inst.k <= self.max_k


def _pair_options(table, inst, p, q, scaled, prune):
    if not prune:
        return (True, False)
    if p in scaled and q in scaled:
        lo, hi = 2 * inst.r_min, 2 * inst.r_max
    else:
        lo, hi = inst.r_min + 1, inst.r_max + 1
    if table.within(p, q, lo * lo):
        return (True,)
    if not table.within(p, q, hi * hi):
        return (False,)
    return (True, False)


def brute_force_solve(inst: Instance, cls: GraphClass, budget: OracleBudget = None,
                      prune=True, seed=None, deadline: Deadline = None) -> SolveOutcome:
    budget = OracleBudget() if budget is None else budget
    if not budget.admits(inst):
        raise OracleBudgetError(f"{inst} is beyond the oracle budget "
                                f"(n <= {budget.max_n}, k <= {budget.max_k})")
    deadline = deadline or Deadline()
    seed = DEFAULT_SEED if seed is None else seed
    stats = SolveStats('oracle')
    started = time.perf_counter()

    table = inst.distances
    n = inst.n
    unit = table.le(4)

    def done(witness):
        stats.millis = (time.perf_counter() - started) * 1000
        outcome = SolveOutcome(witness is not None, witness, stats)
        logging.info(f"oracle on n={n}, k={inst.k}, class={cls.value}: {outcome}")
        return outcome

    for size in range(min(inst.k, n) + 1):
        for T in combinations(range(n), size):
            deadline.check()
            scaled = set(T)
            free = [u for u in range(n) if u not in scaled]

            base = nx.Graph()
            base.add_nodes_from(range(n))
            base.add_edges_from((u, v) for u, v in combinations(free, 2) if unit[u, v])

            pairs = [(p, q) for p, q in combinations(range(n), 2) if p in scaled or q in scaled]
            options = [_pair_options(table, inst, p, q, scaled, prune) for p, q in pairs]

            for choice in product(*options):
                stats.branches += 1
                H = base.copy()
                H.add_edges_from(pair for pair, keep in zip(pairs, choice) if keep)
                if not recognize(H, cls):
                    continue
                if stats.lp_calls >= budget.max_lp_calls:
                    raise OracleBudgetError(f"more than {budget.max_lp_calls} LP calls for {inst}")
                stats.lp_calls += 1
                r = conscal(ConscalInput(inst.points, T, H, inst.r_min, inst.r_max), rng_seed=seed, table=table)
                if r is not None:
                    return done(r)
    return done(None)
