"""Seeded cross-checks against the oracle and runtime benchmarks"""
import math
import logging
from fractions import Fraction

import numpy as np
import pandas as pd

from diskscale import DEFAULTS, DEFAULT_SEED
from diskscale.geometry import GraphClass
from diskscale.gadgets import gen_random
from diskscale.oracle import OracleBudget, brute_force_solve
from diskscale.solvers import solve_xp, solve_cluster_fpt, solve_complete
from diskscale.verify import verify_solution

DEFAULT_BOUNDS = [(Fraction(1, 2), Fraction(1)), (Fraction(1), Fraction(1)),
                  (Fraction(1), Fraction(2)), (Fraction(1, 2), Fraction(5, 2))]

BENCH_COLUMNS = ['n', 'k', 'algo', 'branches', 'lp_calls', 'millis']

SUITES = {
    'xp': (GraphClass.CLUSTER, lambda inst: solve_xp(inst, GraphClass.CLUSTER), (Fraction(1, 2), Fraction(1))),
    'cluster': (GraphClass.CLUSTER, solve_cluster_fpt, (Fraction(1, 2), Fraction(1))),
    'complete': (GraphClass.COMPLETE, solve_complete, (Fraction(1, 2), Fraction(5, 2))),
}


def _contenders(cls):
    algos = [('xp', lambda inst: solve_xp(inst, cls))]
    if cls is GraphClass.CLUSTER:
        algos.append(('cluster-fpt', solve_cluster_fpt))
    if cls is GraphClass.COMPLETE:
        algos.append(('complete', solve_complete))
    return algos


def oracle_compare(trials=200, max_n=8, max_k=2, classes=None, bounds=None, seed=None, inject_fault=False):
    """Compare every applicable solver with the oracle on seeded random instances

    Returns the report dict and one row per (trial, class, algorithm). With
    inject_fault the xp answer is negated before comparing.
    """

    classes = list(GraphClass) if classes is None else classes
    bounds = DEFAULT_BOUNDS if bounds is None else bounds
    rng = np.random.default_rng(DEFAULT_SEED if seed is None else seed)
    budget = OracleBudget(max_n=max(max_n, 1), max_k=max(max_k, 0))

    rows = []
    for trial in range(trials):
        n = int(rng.integers(min(3, max_n), max_n, endpoint=True))
        k = int(rng.integers(0, max_k, endpoint=True))
        r_min, r_max = bounds[int(rng.integers(len(bounds)))]
        box = int(rng.integers(2, 4, endpoint=True))
        inst = gen_random(n, k, r_min, r_max, box_size=box, seed=int(rng.integers(2**31)))

        for cls in classes:
            expected = brute_force_solve(inst, cls, budget).answer
            for name, algo in _contenders(cls):
                outcome = algo(inst)
                answer = outcome.answer != (inject_fault and name == 'xp')
                witness_ok = None
                if outcome.answer:
                    witness_ok = bool(verify_solution(inst, outcome.witness, cls))
                rows.append({'trial': trial, 'n': n, 'k': k, 'r_min': str(r_min), 'r_max': str(r_max),
                             'class': cls.value, 'algo': name, 'answer': answer, 'oracle': expected,
                             'match': answer == expected and witness_ok is not False,
                             'witness_ok': witness_ok})

    df = pd.DataFrame(rows, columns=['trial', 'n', 'k', 'r_min', 'r_max', 'class', 'algo',
                                     'answer', 'oracle', 'match', 'witness_ok'])
    tallies = {}
    for cls in classes:
        oracle_answers = df[(df['class'] == cls.value)].drop_duplicates('trial')['oracle']
        tallies[cls.value] = {'yes': int(oracle_answers.sum()), 'no': int((~oracle_answers.astype(bool)).sum())}

    mismatches = df[~df['match'].astype(bool)]
    if len(mismatches):
        logging.warning(f"{len(mismatches)} disagreements with the oracle:\n{mismatches}")
    report = {'trials': trials, 'comparisons': len(df), 'mismatches': len(mismatches),
              'mismatched_trials': sorted(set(int(t) for t in mismatches['trial'])), 'tallies': tallies}
    logging.info(f"oracle-compare: {report['comparisons']} comparisons, {report['mismatches']} mismatches")
    return report, df


def bench(suite, sizes, k=2, repeats=None, seed=None, timeout=None) -> pd.DataFrame:
    """Median branches, LP calls and milliseconds per size"""

    assert suite in SUITES, f"unknown suite {suite}"
    repeats = DEFAULTS['bench_repeats'] if repeats is None else repeats
    cls, algo, (r_min, r_max) = SUITES[suite]
    seed = DEFAULT_SEED if seed is None else seed

    rows = []
    for n in sizes:
        box = max(2, math.isqrt(int(n)))
        runs = []
        for rep in range(repeats):
            inst = gen_random(int(n), k, r_min, r_max, box_size=box, seed=seed + rep)
            outcome = algo(inst)
            runs.append(outcome.stats.to_dict())
        runs = pd.DataFrame(runs)
        rows.append({'n': int(n), 'k': k, 'algo': runs['algorithm'].iloc[0],
                     'branches': runs['branches'].median(),
                     'lp_calls': runs['lp_calls'].median(),
                     'millis': runs['millis'].median()})
        logging.info(f"bench {suite}: n={n} median {rows[-1]['millis']:.1f} ms")
    return pd.DataFrame(rows, columns=BENCH_COLUMNS)
