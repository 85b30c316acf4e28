"""
command line front end

  kcolib gen      --n 1000 --d 5 --seed 7 --out g.json
  kcolib schedule --in g.json --L 4 --out s.json
  kcolib sample   --in g.json --k 12 --seed 1 --m 10 --out col.txt
  kcolib verify   --suite bijection --max-n 7 --k 4
  kcolib analyze  --n 5000 --d 20 --k 50 --trials 2000 --lmax 12
  kcolib bench    --sizes 20000,40000,80000 --d 5 --k 12 --seeds 3

"""

import argparse
import json
import sys
import warnings
from enum import IntEnum
from kcolib.graph import RandomStream, rCST, uMode, uStatus, uStream, \
    generate_gnp, graph2str, read_graph
from kcolib.schedule import audit_schedule, auto_threshold, build_schedule, \
    write_schedule
from kcolib.basesmp import colourings2str
from kcolib.pipeline import RunConfig, bench, sample_many
from kcolib.verify import SUITE_NAMES, run_suite, suite_from_name, \
    write_report
from kcolib.decay import path_decay_sim


class uExit(IntEnum):
    """ class for process exit codes """
    OK = 0
    CHECK = 1
    USAGE = 2
    IO = 3


def _intlist(s):
    try:
        return [int(t) for t in s.split(',') if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma separated integers")


def _seed(s):
    v = int(s)
    if not 0 <= v < rCST.SEED_MAX:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned int")
    return v


def _load(path):
    try:
        return read_graph(path)
    except ValueError as e:
        raise OSError("malformed graph file {}: {}".format(path, e))


def _emit(txt, path):
    if path is None:
        sys.stdout.write(txt)
    else:
        with open(path, 'w') as f:
            f.write(txt)


def build_parser():
    ap = argparse.ArgumentParser(
        prog="kcolib", description="random proper k-colourings of sparse "
        "random graphs", formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    com = argparse.ArgumentParser(add_help=False)
    com.add_argument("--seed", type=_seed, default=0)
    com.add_argument("--out", type=str, default=None)
    com.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("gen", parents=[com], help="sample G(n, d/n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=float, required=True)

    p = sub.add_parser("schedule", parents=[com],
                       help="build and audit the deletion schedule")
    p.add_argument("--in", dest="inp", type=str, required=True)
    p.add_argument("--L", type=int, default=None)
    p.add_argument("--d", type=float, default=None)

    p = sub.add_parser("sample", parents=[com], help="sample colourings")
    p.add_argument("--in", dest="inp", type=str, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--mode", choices=["faithful", "retry"], default="retry")
    p.add_argument("--L", type=int, default=None)
    p.add_argument("--c-max", type=int, default=rCST.C_MAX)
    p.add_argument("--log", type=str, default=None,
                   help="JSON-lines step records and summary")
    p.add_argument("--trace", type=str, default=None,
                   help="monitor trace of bad steps")

    p = sub.add_parser("verify", parents=[com], help="run exact checks")
    p.add_argument("--suite", choices=list(SUITE_NAMES.values()),
                   required=True)
    p.add_argument("--fixtures", choices=["default", "small"],
                   default="default")
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--k", type=_intlist, default=None)
    p.add_argument("--max-len", type=int, default=3)

    p = sub.add_parser("analyze", parents=[com],
                       help="disagreement path decay")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=float, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--lmax", type=int, default=12)

    p = sub.add_parser("bench", parents=[com], help="runtime scaling")
    p.add_argument("--sizes", type=_intlist, required=True)
    p.add_argument("--d", type=float, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seeds", type=int, default=3)
    p.add_argument("--mode", choices=["faithful", "retry"], default="retry")
    return ap


def cmd_gen(ap, args):
    if args.n < 1:
        ap.error("argument --n: must be >= 1")
    if args.d < 0 or args.d > args.n:
        ap.error("argument --d: must lie in [0, n]")
    g = generate_gnp(args.n, args.d, RandomStream(args.seed, (uStream.GEN,)))
    _emit(graph2str(g), args.out)
    return uExit.OK


def cmd_schedule(ap, args):
    if args.L is not None and args.L < rCST.L_MIN:
        ap.error("argument --L: must be >= {}".format(rCST.L_MIN))
    g = _load(args.inp)
    L = args.L if args.L is not None else auto_threshold(g)
    s = build_schedule(g, L, args.d)
    if args.out is not None:
        write_schedule(s, args.out)
    rep = audit_schedule(s, g)
    print(json.dumps(rep.todict()))
    return uExit.OK if rep.distance_violations == 0 else uExit.CHECK


def cmd_sample(ap, args):
    if args.k < 3:
        ap.error("argument --k: must be >= 3")
    if args.m < 1:
        ap.error("argument --m: must be >= 1")
    if args.L is not None and args.L < rCST.L_MIN:
        ap.error("argument --L: must be >= {}".format(rCST.L_MIN))
    g = _load(args.inp)
    mode = uMode.FAITHFUL if args.mode == "faithful" else uMode.RETRY
    cfg = RunConfig(args.k, args.seed, mode, args.L, args.c_max)
    with warnings.catch_warnings(record=True) as ws:
        warnings.simplefilter("always")
        xs, log = sample_many(g, cfg, args.m, out=args.out,
                              logfile=args.trace, workers=args.workers,
                              runlog=args.log)
    for w in ws:
        sys.stderr.write("warning: {}\n".format(w.message))
    if args.out is None:
        sys.stdout.write(colourings2str(xs, g.n, args.k, args.seed))
    sys.stderr.write(json.dumps(log.summary())+"\n")
    nimp = sum(1 for x in xs if x.status == uStatus.IMPROPER)
    return uExit.CHECK if mode == uMode.RETRY and nimp > 0 else uExit.OK


def cmd_verify(ap, args):
    max_n = args.max_n
    if max_n is None:
        max_n = 8 if args.fixtures == "default" else 6
    ks = args.k if args.k else [3, 4, 5]
    if any(k < 2 for k in ks):
        ap.error("argument --k: colours must be >= 2")
    recs = run_suite(suite_from_name(args.suite), ks, max_n, args.max_len)
    ok = write_report(recs, args.out)
    return uExit.OK if ok else uExit.CHECK


def cmd_analyze(ap, args):
    if args.trials < 1:
        ap.error("argument --trials: must be >= 1")
    if args.lmax < 0:
        ap.error("argument --lmax: must be >= 0")
    if args.n < 1 or args.d < 0 or args.d > args.n:
        ap.error("argument --d: must lie in [0, n] with n >= 1")
    rep = path_decay_sim(args.n, args.d, args.k, args.trials, args.lmax,
                         args.seed, args.workers)
    _emit(rep.tocsv(), args.out)
    sys.stderr.write("ratio {} [{}, {}]\n".format(rep.ratio, rep.ratio_lo,
                                                  rep.ratio_hi))
    return uExit.OK


def cmd_bench(ap, args):
    sizes = args.sizes
    if not sizes or any(b <= a for a, b in zip(sizes, sizes[1:])):
        ap.error("argument --sizes: must be strictly ascending")
    if args.k < 3:
        ap.error("argument --k: must be >= 3")
    mode = uMode.FAITHFUL if args.mode == "faithful" else uMode.RETRY
    rep = bench(sizes, args.d, args.k, args.seeds, mode)
    _emit(json.dumps(rep.todict())+"\n", args.out)
    return uExit.OK


cmds = {"gen": cmd_gen, "schedule": cmd_schedule, "sample": cmd_sample,
        "verify": cmd_verify, "analyze": cmd_analyze, "bench": cmd_bench}


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        if args.workers < 1:
            ap.error("argument --workers: must be >= 1")
        return int(cmds[args.cmd](ap, args))
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else uExit.USAGE
    except OSError as e:
        sys.stderr.write("error: {}\n".format(e))
        return int(uExit.IO)
    except ValueError as e:
        sys.stderr.write("error: {}\n".format(e))
        return int(uExit.CHECK)


if __name__ == '__main__':
    sys.exit(main())
