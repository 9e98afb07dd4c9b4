"""Command-line surface; exit code 0 = yes, 1 = no, 2 = error"""
import os
import sys
import json
import logging

import argh

from diskscale import TMPDIR, set_verbose
from diskscale.errors import DiskScaleError, InstanceFormatError, UsageError
from diskscale.geometry import GraphClass
from diskscale.gadgets import gen_random, heavy_p3_instance, gen_vc_shrink, gen_is_enlarge, VARIANTS
from diskscale.gridtiling import (gen_gridtiling_connected, gt_le_to_lt, gt_lt_to_gt, plant_grid_tiling)
from diskscale.fileio import (read_instance, write_instance, read_solution, write_solution, read_embedding,
                              read_grid_tiling, write_grid_tiling, write_artifact, write_json, solution_to_dict)
from diskscale.harness import oracle_compare, bench, SUITES
from diskscale.plotutils import write_svg, plot_bench
from diskscale.solvers import solve, ALGORITHMS
from diskscale.verify import verify_solution

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2

CLASSES = [c.value for c in GraphClass]
GENERATORS = ['random', 'heavy-p3', 'vc-shrink', 'is-enlarge', 'gridtiling', 'gt-transform']
GT_MODES = ['le-to-lt', 'lt-to-gt']


def _require(**flags):
    missing = [name for name, value in flags.items() if value is None]
    if missing:
        raise UsageError(f"provide {', '.join('--' + m.replace('_', '-') for m in missing)}")


def _class_of(cls, instance_file):
    if cls is not None:
        return GraphClass.parse(cls)
    if instance_file.cls is None:
        raise InstanceFormatError("no --class given and the instance file names none")
    return instance_file.cls


# =============================================================================
# Commands
# =============================================================================
@argh.arg('--class', dest='cls', choices=CLASSES, help='target graph class (default: the file\'s "class")')
@argh.arg('--algo', choices=ALGORITHMS)
@argh.arg('--seed', type=int)
@argh.arg('--timeout', type=float)
def solve_cmd(instance: str = None, cls: str = None, algo: str = 'auto', out: str = None,
              seed: int = None, timeout: float = None, verbose: bool = False):
    """Decide whether at most k disks can be rescaled into the class; writes the witness to --out"""

    set_verbose(verbose)
    _require(instance=instance)
    source = read_instance(instance)
    graph_class = _class_of(cls, source)
    outcome = solve(source.instance, graph_class, algo=algo, timeout=timeout, seed=seed)

    report = {'answer': 'yes' if outcome.answer else 'no', 'class': graph_class.value, 'stats': outcome.stats.to_dict()}
    if outcome.answer:
        report['solution'] = solution_to_dict(outcome.witness)
        if out:
            write_solution(out, outcome.witness)
    print(json.dumps(report))
    sys.exit(EXIT_YES if outcome.answer else EXIT_NO)


@argh.arg('--class', dest='cls', choices=CLASSES)
def verify(instance: str = None, solution: str = None, cls: str = None, verbose: bool = False):
    """Check a solution file against an instance"""

    set_verbose(verbose)
    _require(instance=instance, solution=solution)
    source = read_instance(instance)
    verdict = verify_solution(source.instance, read_solution(solution), _class_of(cls, source))
    if not verdict:
        logging.warning(f"rejected: {verdict}")
        sys.exit(EXIT_NO)
    logging.info("solution verifies")
    sys.exit(EXIT_YES)


@argh.arg('kind', choices=GENERATORS)
@argh.arg('--class', dest='cls', choices=CLASSES)
@argh.arg('--variant', choices=VARIANTS)
@argh.arg('--mode', choices=GT_MODES)
@argh.arg('--seed', type=int)
@argh.arg('--gamma', type=int)
def generate(kind, out: str = None, n: int = 5, k: int = 1, r_min: str = '1/2', r_max: str = None,
             box_size: int = 4, seed: int = None, cls: str = None,
             delta: int = 1, theta: int = 2, xi: str = '2',
             embedding: str = None, kappa: int = 1, variant: str = 'strict-enlarge',
             gt: str = None, eta: int = 2, extra: int = 0, gamma: int = None, mode: str = 'le-to-lt',
             verbose: bool = False):
    """Write a random instance, a heavy P3, a hardness construction or a transformed Grid Tiling instance"""

    set_verbose(verbose)
    _require(out=out)
    graph_class = GraphClass.parse(cls) if cls else None

    if kind == 'random':
        inst = gen_random(n, k, r_min, r_max or r_min, box_size=box_size, seed=seed)
        write_instance(out, inst, graph_class, {'generator': 'random', 'seed': seed, 'box_size': box_size})
    elif kind == 'heavy-p3':
        inst = heavy_p3_instance(delta, theta, xi, k, r_min, r_max or r_min)
        write_instance(out, inst, graph_class or GraphClass.CLUSTER, {'generator': 'heavy-p3', 'delta': delta, 'theta': theta, 'xi': xi})
    elif kind == 'vc-shrink':
        _require(embedding=embedding)
        art = gen_vc_shrink(read_embedding(embedding), kappa, r_min, r_max)
        write_artifact(out, art, GraphClass.CLUSTER)
    elif kind == 'is-enlarge':
        _require(embedding=embedding)
        art = gen_is_enlarge(read_embedding(embedding), kappa, r_min, variant, r_max)
        write_artifact(out, art, GraphClass.CLUSTER)
    elif kind == 'gridtiling':
        instance = read_grid_tiling(gt) if gt else plant_grid_tiling(eta, kappa, '>', extra, seed)[0]
        art = gen_gridtiling_connected(instance, gamma=gamma)
        write_artifact(out, art, GraphClass.CONNECTED)
    else:
        _require(gt=gt)
        transform = gt_le_to_lt if mode == 'le-to-lt' else gt_lt_to_gt
        write_grid_tiling(out, transform(read_grid_tiling(gt)))
    logging.info(f"Wrote {out}")
    sys.exit(EXIT_YES)


@argh.arg('--seed', type=int)
def oracle_compare_cmd(trials: int = 200, max_n: int = 8, max_k: int = 2, classes: str = ','.join(CLASSES),
                       seed: int = None, out: str = None, verbose: bool = False):
    """Cross-check the solvers against the brute-force oracle; exit 1 on any mismatch"""

    set_verbose(verbose)
    wanted = [GraphClass.parse(c) for c in classes.split(',') if c.strip()]
    report, _ = oracle_compare(trials=trials, max_n=max_n, max_k=max_k, classes=wanted, seed=seed)
    if out:
        write_json(out, report)
    print(json.dumps(report))
    sys.exit(EXIT_NO if report['mismatches'] else EXIT_YES)


def plot(instance: str = None, solution: str = None, out: str = None, verbose: bool = False):
    """Render the disks as SVG, scaled disks highlighted"""

    set_verbose(verbose)
    _require(instance=instance)
    source = read_instance(instance)
    r = read_solution(solution) if solution else None
    if r is not None and len(r) != source.instance.n:
        raise InstanceFormatError(f"solution has {len(r)} radii for {source.instance.n} points")
    out = out or os.path.join(TMPDIR, os.path.splitext(os.path.basename(instance))[0] + '.svg')
    write_svg(out, source.instance, r)
    logging.info(f"Wrote {out}")
    sys.exit(EXIT_YES)


@argh.arg('--suite', choices=list(SUITES))
@argh.arg('--seed', type=int)
@argh.arg('--repeats', type=int)
def bench_cmd(suite: str = 'complete', sizes: str = '', k: int = 2, repeats: int = None, seed: int = None,
              out: str = None, plot: bool = False, verbose: bool = False):
    """Median branches, LP calls and runtime per instance size, as CSV"""

    set_verbose(verbose)
    ns = [int(s) for s in sizes.split(',') if s.strip()]
    df = bench(suite, ns, k=k, repeats=repeats, seed=seed)
    out = out or os.path.join(TMPDIR, f"bench_{suite}.csv")
    df.to_csv(out, index=False)
    logging.info(f"Wrote {out}")
    if plot and len(df):
        plot_bench(df, name=f"bench_{suite}")
    sys.exit(EXIT_YES)


COMMANDS = [argh.named('solve')(solve_cmd), verify, generate,
            argh.named('oracle-compare')(oracle_compare_cmd), plot, argh.named('bench')(bench_cmd)]


def main(argv=None):
    """Dispatch a command; domain, I/O and JSON errors exit with code 2"""
    try:
        argh.dispatch_commands(COMMANDS, argv=sys.argv[1:] if argv is None else argv)
    except (DiskScaleError, OSError, ValueError) as err:
        logging.error(f"{type(err).__name__}: {err}")
        sys.exit(EXIT_ERROR)
