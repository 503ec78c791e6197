"""Command-line front end.

Exit codes: 0 success / member, 2 infeasible or non-member, 3 size-cap
refusal, 64 usage or argument error, 65 instance parse error, 70 internal
validation failure.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import colorcoding, dp, fileformat, gadgets, generators, oracle, recognition
from .colorcoding import ColoringFamilySpec, Mode
from .graph import (
    Graph,
    SizeCapError,
    Solution,
    ValidationError,
    WeightedInstance,
)
from .treedecomp import clique_tree_from_peo

EXIT_OK = 0
EXIT_ABSENT = 2
EXIT_CAP = 3
EXIT_USAGE = 64
EXIT_PARSE = 65
EXIT_INTERNAL = 70


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    top = _Parser(prog="mwccs", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    def add_family_flags(p, with_ell=True):
        if with_ell:
            p.add_argument("--ell", type=int, default=None, help="vertex budget")
        p.add_argument(
            "--mode",
            choices=[m.value for m in Mode],
            default=Mode.EXHAUSTIVE.value,
        )
        p.add_argument("--epsilon", type=float, default=0.01)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--trial-cap", type=int, default=None)
        p.add_argument("--jobs", type=int, default=1)

    def add_output_flags(p):
        p.add_argument("-o", "--output", default=None, help="solution file path")
        p.add_argument("--timings", action="store_true",
                       help="include elapsed_ms in the solution document")

    solve = sub.add_parser("solve", help="run a solver").add_subparsers(
        dest="problem", required=True
    )
    p = solve.add_parser("mwccs")
    p.add_argument("instance")
    p.add_argument("--c", type=int, required=True)
    add_family_flags(p)
    add_output_flags(p)
    p = solve.add_parser("mwis")
    p.add_argument("instance")
    add_family_flags(p)
    add_output_flags(p)
    p = solve.add_parser("colorful")
    p.add_argument("instance")
    add_output_flags(p)

    p = sub.add_parser("recognize", help="graph class membership")
    p.add_argument("instance")
    p.add_argument("--class", dest="klass", required=True)
    p.add_argument("--witness", default=None, help="witness file path")
    p.add_argument("--edge-cap", type=int, default=24)

    gen = sub.add_parser("generate", help="random instances").add_subparsers(
        dest="family", required=True
    )
    for fam in ("chordal", "cluster", "overlay", "mcc"):
        p = gen.add_parser(fam)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("-o", "--output", required=True)
        if fam == "mcc":
            p.add_argument("--k", type=int, required=True)
            p.add_argument("--class-sizes", type=int, nargs="+", required=True)
            p.add_argument("--p", type=float, default=0.5)
            p.add_argument("--plant", action="store_true")
        else:
            p.add_argument("--n", type=int, required=True)
            p.add_argument("--max-w", type=int, default=None)
            if fam in ("chordal", "overlay"):
                p.add_argument("--max-clique", type=int, default=4)
            if fam in ("cluster", "overlay"):
                p.add_argument("--max-cluster", type=int, default=3)

    p = sub.add_parser("reduce", help="hardness reductions")
    p.add_argument("kind", help="construction1 | indkind:<k> | k1kfree:<k>")
    p.add_argument("instance")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--names", default=None, help="gadget name-map sidecar path")

    p = sub.add_parser("oracle", help="brute-force cross-checks")
    p.add_argument("problem", choices=["mwis", "mwccs", "colorful", "mcc", "hamiltonian"])
    p.add_argument("instance")
    p.add_argument("--c", type=int, default=None)
    p.add_argument("--ell", type=int, default=None)

    return top


def _emit_solution(args, sol: Solution, mode: str, seed: int, trials: int,
                   elapsed_ms: int | None) -> None:
    text = fileformat.solution_to_text(
        sol, mode, seed, trials, elapsed_ms if args.timings else None
    )
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _spec_from_args(args) -> ColoringFamilySpec:
    return ColoringFamilySpec(
        mode=Mode(args.mode),
        epsilon=args.epsilon,
        seed=args.seed,
        trial_cap=args.trial_cap,
    )


def _with_singleton_clusters(inst: WeightedInstance) -> WeightedInstance:
    return WeightedInstance(
        inst.graph,
        inst.weights,
        colors=inst.colors,
        clusters=inst.clusters,
        cluster_edges=frozenset(),
        chordal_edges=frozenset(inst.graph.edges()),
    )


def _cmd_solve(args) -> int:
    inst = fileformat.parse_instance(args.instance)
    started = time.monotonic()
    stats: dict = {}
    if args.problem == "mwccs":
        if args.ell is None:
            raise _UsageError("solve mwccs requires --ell")
        spec = _spec_from_args(args)
        if not inst.has_decomposition:
            if recognition.is_chordal(inst.graph) is None:
                print(
                    "instance is neither witnessed cluster+chordal nor chordal",
                    file=sys.stderr,
                )
                return EXIT_ABSENT
            inst = _with_singleton_clusters(inst)
        sol = colorcoding.mwccs_cluster_chordal(
            inst, args.c, args.ell, spec, stats, jobs=args.jobs
        )
        sol.validate(inst, args.c)
        elapsed = int((time.monotonic() - started) * 1000)
        _emit_solution(args, sol, spec.mode.value, spec.seed,
                       stats.get("trials", 0), elapsed)
        return EXIT_OK
    if args.problem == "mwis":
        spec = _spec_from_args(args)
        if inst.has_decomposition:
            if args.ell is None:
                raise _UsageError(
                    "solve mwis on a witnessed instance requires --ell"
                )
            sol = colorcoding.mwis_cluster_chordal(inst, args.ell, spec, stats)
            sol.validate(inst)
            elapsed = int((time.monotonic() - started) * 1000)
            _emit_solution(args, sol, spec.mode.value, spec.seed,
                           stats.get("trials", 0), elapsed)
            return EXIT_OK
        peo = recognition.is_chordal(inst.graph)
        if peo is None:
            print(
                "instance is not chordal; supply a decomposition witness",
                file=sys.stderr,
            )
            return EXIT_ABSENT
        if args.ell is not None:
            sol = colorcoding.mwis_cluster_chordal(
                _with_singleton_clusters(inst), args.ell, spec, stats
            )
            sol.validate(inst)
            elapsed = int((time.monotonic() - started) * 1000)
            _emit_solution(args, sol, spec.mode.value, spec.seed,
                           stats.get("trials", 0), elapsed)
            return EXIT_OK
        td = clique_tree_from_peo(inst.graph, peo)
        sol = dp.max_weight_is_chordal(inst, td)
        sol.validate(inst)
        elapsed = int((time.monotonic() - started) * 1000)
        _emit_solution(args, sol, "direct", 0, 1, elapsed)
        return EXIT_OK
    # colorful
    if inst.colors is None:
        raise _UsageError("solve colorful needs col lines in the instance")
    peo = recognition.is_chordal(inst.graph)
    if peo is None:
        print("instance is not chordal", file=sys.stderr)
        return EXIT_ABSENT
    td = clique_tree_from_peo(inst.graph, peo)
    sol = dp.max_weight_colorful_is(inst, td, 1)
    sol.validate(inst, inst.num_colors)
    elapsed = int((time.monotonic() - started) * 1000)
    _emit_solution(args, sol, "direct", 0, 1, elapsed)
    return EXIT_OK


def _write_witness(path: str | None, text: str) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _order_text(order) -> str:
    return "order " + " ".join(str(v + 1) for v in order) + "\n"


def _cmd_recognize(args) -> int:
    inst = fileformat.parse_instance(args.instance)
    g = inst.graph
    klass = args.klass
    if klass == "chordal":
        peo = recognition.is_chordal(g)
        if peo is not None:
            print("chordal: yes")
            _write_witness(args.witness, _order_text(peo))
            return EXIT_OK
        print("chordal: no")
        return EXIT_ABSENT
    if klass == "cluster":
        if recognition.is_cluster(g):
            print("cluster: yes")
            return EXIT_OK
        viol = recognition.find_cluster_violation(g)
        print(f"cluster: no (induced path {tuple(v + 1 for v in viol)})")
        return EXIT_ABSENT
    if klass == "two-simplicial":
        order = recognition.two_simplicial_ordering(g)
        if order is not None:
            print("two-simplicial: yes")
            _write_witness(args.witness, _order_text(order))
            return EXIT_OK
        print("two-simplicial: no")
        return EXIT_ABSENT
    if klass == "cluster-chordal-brute":
        dec = recognition.brute_force_cluster_chordal(g, edge_cap=args.edge_cap)
        if dec is not None:
            print("cluster-chordal: yes")
            lines = [f"C {u + 1} {v + 1}" for u, v in sorted(dec.cluster_edges)]
            lines += [f"H {u + 1} {v + 1}" for u, v in sorted(dec.chordal_edges)]
            _write_witness(args.witness, "\n".join(lines) + "\n" + _order_text(dec.peo))
            return EXIT_OK
        print("cluster-chordal: no")
        return EXIT_ABSENT
    for prefix, runner in (("kmino", None), ("k1kfree", None), ("inductive", None)):
        if klass.startswith(prefix + ":"):
            try:
                k = int(klass.split(":", 1)[1])
            except ValueError:
                raise _UsageError(f"bad class parameter in {klass!r}")
            if prefix == "kmino":
                ok = recognition.is_k_mino(g, k)
                print(f"kmino:{k}: {'yes' if ok else 'no'}")
                return EXIT_OK if ok else EXIT_ABSENT
            if prefix == "k1kfree":
                witness = recognition.is_k1k_free(g, k)
                if witness is None:
                    print(f"k1kfree:{k}: yes")
                    return EXIT_OK
                center, leaves = witness
                print(f"k1kfree:{k}: no")
                _write_witness(
                    args.witness,
                    f"center {center + 1}\nleaves "
                    + " ".join(str(v + 1) for v in sorted(leaves))
                    + "\n",
                )
                return EXIT_ABSENT
            order = recognition.find_inductive_k_independent_ordering(g, k)
            if order is not None:
                print(f"inductive:{k}: yes")
                _write_witness(args.witness, _order_text(order))
                return EXIT_OK
            print(f"inductive:{k}: no")
            return EXIT_ABSENT
    raise _UsageError(f"unknown class {klass!r}")


def _cmd_generate(args) -> int:
    if args.family == "chordal":
        g = generators.random_chordal(args.n, args.max_clique, args.seed)
        inst = WeightedInstance.unit(g)
    elif args.family == "cluster":
        g, labels = generators.random_cluster(args.n, args.max_cluster, args.seed)
        inst = WeightedInstance.unit(g, clusters=labels)
    elif args.family == "overlay":
        inst = generators.random_cluster_chordal_instance(
            args.n, args.max_cluster, args.max_clique,
            args.max_w if args.max_w is not None else 1, args.seed,
        )
    else:  # mcc
        mcc = generators.random_multicolored_clique(
            args.k, args.class_sizes, args.p, args.plant, args.seed
        )
        labels = [0] * mcc.graph.n
        for i, cls in enumerate(mcc.classes):
            for v in cls:
                labels[v] = i
        inst = WeightedInstance.unit(mcc.graph, clusters=tuple(labels))
        fileformat.write_instance(inst, args.output, comments=[f"mcc k={args.k}"])
        print(f"wrote {args.output}")
        return EXIT_OK
    if args.family != "overlay" and args.max_w is not None:
        inst = generators.random_weights(inst, args.max_w, args.seed + 1)
    fileformat.write_instance(inst, args.output)
    print(f"wrote {args.output}")
    return EXIT_OK


def _cmd_reduce(args) -> int:
    inst = fileformat.parse_instance(args.instance)
    if args.kind == "construction1":
        mcc = fileformat.mcc_from_instance(inst)
        gprime, ell, index = gadgets.construct_mis_instance(mcc)
        out = WeightedInstance.unit(gprime)
        fileformat.write_instance(out, args.output, comments=[f"target ell {ell}"])
        if args.names:
            with open(args.names, "w", encoding="utf-8") as fh:
                fh.write(index.names_text())
        print(f"ell {ell}")
        return EXIT_OK
    for prefix, fn in (("indkind", gadgets.gen_indkind_hardness),
                       ("k1kfree", gadgets.gen_k1kfree_hardness)):
        if args.kind.startswith(prefix + ":"):
            k = int(args.kind.split(":", 1)[1])
            out = WeightedInstance.unit(fn(inst.graph, k))
            fileformat.write_instance(out, args.output)
            print(f"wrote {args.output}")
            return EXIT_OK
    raise _UsageError(f"unknown reduction {args.kind!r}")


def _cmd_oracle(args) -> int:
    inst = fileformat.parse_instance(args.instance)
    if args.problem == "mwis":
        sol = oracle.brute_mwis(inst, args.ell)
        sys.stdout.write(fileformat.solution_to_text(sol, "oracle", 0, 1))
        return EXIT_OK
    if args.problem == "mwccs":
        if args.c is None:
            raise _UsageError("oracle mwccs requires --c")
        sol = oracle.brute_mwccs(inst, args.c, args.ell)
        sys.stdout.write(fileformat.solution_to_text(sol, "oracle", 0, 1))
        return EXIT_OK
    if args.problem == "colorful":
        sol = oracle.brute_colorful_is(inst)
        sys.stdout.write(fileformat.solution_to_text(sol, "oracle", 0, 1))
        return EXIT_OK
    if args.problem == "mcc":
        found = oracle.brute_multicolored_clique(fileformat.mcc_from_instance(inst))
        print("multicolored-clique: " + ("yes" if found else "no"))
        return EXIT_OK if found else EXIT_ABSENT
    found = oracle.brute_hamiltonian_cycle(inst.graph)
    print("hamiltonian: " + ("yes" if found else "no"))
    return EXIT_OK if found else EXIT_ABSENT


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "solve":
            return _cmd_solve(args)
        if args.command == "recognize":
            return _cmd_recognize(args)
        if args.command == "generate":
            return _cmd_generate(args)
        if args.command == "reduce":
            return _cmd_reduce(args)
        return _cmd_oracle(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except fileformat.ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SizeCapError as exc:
        print(f"size cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValidationError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as exc:
        print(f"argument error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
