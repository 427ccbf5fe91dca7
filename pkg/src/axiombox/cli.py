"""Command-line front end.

Subcommands cover the full pipeline: prepare a tableau from axioms, push it
through a black box, classify a proposition, measure, sample, enumerate,
run the demonstration grids, cross-check the tableau engine against the
dense oracle, and run the misclassification decay study.

Exit codes: 0 success, 1 domain error (invalid axioms, size mismatches,
oracle disagreement), 2 usage error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import blackbox as bb
from . import experiment as xp
from . import logic
from . import oracle
from . import pauli
from . import stabilizer as stab

ORACLE_TOLERANCE = 1e-9


def _write_output(text: str, out: Optional[str]) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _load_config(path: str) -> bb.BlackBoxConfig:
    return bb.parse_config(Path(path).read_text())


def _load_axiom_observables(path: str) -> list:
    observables = []
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            observables.append(pauli.parse_observable(line))
    return observables


def _config_from_args(args, n: int) -> bb.BlackBoxConfig:
    if getattr(args, "config", None):
        cfg = _load_config(args.config)
    elif getattr(args, "labels", None):
        labels = [int(tok.strip().lstrip("yY")) for tok in args.labels.split(",")]
        cfg = bb.BlackBoxConfig.from_labels(labels)
    else:
        cfg = bb.BlackBoxConfig.identity(n)
    if cfg.n != n:
        raise ValueError(f"config has {cfg.n} functions, expected {n}")
    return cfg


def _noise_from_args(args) -> xp.NoiseModel:
    return xp.NoiseModel(flip_prob=args.noise)


def cmd_prepare(args) -> int:
    tableau = stab.StabilizerTableau.from_text(Path(args.axioms).read_text())
    _write_output(tableau.to_text(), args.out)
    return 0


def cmd_blackbox(args) -> int:
    tableau = stab.StabilizerTableau.from_text(Path(args.state).read_text())
    cfg = _load_config(args.config)
    _write_output(stab.apply_blackbox(tableau, cfg).to_text(), args.out)
    return 0


def cmd_check(args) -> int:
    observables = _load_axiom_observables(args.axioms)
    axioms = logic.AxiomSet.from_observables(observables)
    prop = logic.Proposition.from_string(args.prop)
    report = logic.classify(prop, axioms)
    if not report.dependent:
        _write_output("independent\n", args.out)
        return 0
    state = stab.prepare(axioms.generator_pairs())
    classical = logic.classical_truth(prop, axioms)
    quantum = logic.quantum_truth(prop, state)
    k = ",".join(str(bit) for bit in report.coefficients)
    _write_output(
        f"dependent, k=({k}), classical={classical}, quantum={quantum}\n", args.out
    )
    return 0


def cmd_measure(args) -> int:
    tableau = stab.StabilizerTableau.from_text(Path(args.state).read_text())
    obs = pauli.parse_observable(args.obs)
    result = stab.measure(tableau, obs, rng=xp.philox_rng(args.seed))
    kind = result.kind.value
    _write_output(f"{kind} {result.outcome:+d}\n", args.out)
    return 0


def cmd_sample(args) -> int:
    tableau = stab.StabilizerTableau.from_text(Path(args.state).read_text())
    observables = [pauli.parse_observable(tok) for tok in args.obs.split(",")]
    record = xp.sample(
        tableau, observables, args.runs, args.seed, _noise_from_args(args)
    )
    basis_label = ";".join(str(o) for o in observables)
    rows = xp.record_rows(Path(args.state).stem, basis_label, record, len(observables))
    comment = (
        f"sample state={Path(args.state).name} obs={args.obs} "
        f"runs={args.runs} seed={args.seed} flip_prob={args.noise}"
    )
    _write_output(xp.render_frequency_csv(rows, comment), args.out)
    return 0


def cmd_enumerate(args) -> int:
    if args.axioms:
        axioms = logic.AxiomSet.from_observables(_load_axiom_observables(args.axioms))
        n = axioms.n_qubits
    else:
        n = args.n
        if n is None:
            raise ValueError("enumerate needs --n or --axioms")
        # Default axiom system: one z observable per qubit.
        observables = [
            pauli.parse_observable("I" * i + "Z" + "I" * (n - i - 1)) for i in range(n)
        ]
        axioms = logic.AxiomSet.from_observables(observables)
    counts = logic.enumerate_propositions(n, axioms)
    _write_output(
        f"dependent: {counts.dependent}, independent: {counts.independent}\n",
        args.out,
    )
    return 0


def cmd_ghz_demo(args) -> int:
    cfg = _config_from_args(args, 3)
    report = logic.ghz_report(cfg)
    if args.json:
        _write_output(report.to_json() + "\n", args.out)
    else:
        _write_output(report.to_text(), args.out)
    return 0


def cmd_q1_demo(args) -> int:
    cfg = _config_from_args(args, 1)
    rows = xp.reproduce_q1(cfg, args.runs, args.seed, _noise_from_args(args))
    comment = (
        f"q1-demo config={cfg} runs={args.runs} seed={args.seed} "
        f"flip_prob={args.noise}"
    )
    _write_output(xp.render_frequency_csv(rows, comment), args.out)
    return 0


def cmd_q2_demo(args) -> int:
    cfg = _config_from_args(args, 2)
    rows = xp.reproduce_q2(cfg, args.runs, args.seed, _noise_from_args(args))
    comment = (
        f"q2-demo config={cfg} runs={args.runs} seed={args.seed} "
        f"flip_prob={args.noise}"
    )
    _write_output(xp.render_frequency_csv(rows, comment), args.out)
    return 0


def cmd_oracle_compare(args) -> int:
    rng = xp.philox_rng(args.seed)
    worst = 0.0
    for _ in range(args.trials):
        axioms = stab.random_axioms(args.n, rng)
        tableau = stab.prepare(axioms)
        count = int(rng.integers(1, args.n + 2))
        observables = stab.random_commuting_observables(args.n, count, rng)
        exact = stab.joint_distribution(tableau, observables)
        state = oracle.state_from_axioms(axioms)
        dense = oracle.distribution(state, observables)
        worst = max(worst, exact.max_deviation(dense))
    _write_output(
        f"trials: {args.trials}\nmax_deviation: {worst:.3e}\n"
        f"verdict: {'agree' if worst < ORACLE_TOLERANCE else 'DISAGREE'}\n",
        args.out,
    )
    return 0 if worst < ORACLE_TOLERANCE else 1


def cmd_decay_study(args) -> int:
    lengths = [int(tok) for tok in args.lengths.split(",")]
    noise = xp.NoiseModel(flip_prob=args.noise)
    rows = xp.decay_study(noise, lengths, args.trials, args.seed, args.threshold)
    comment = (
        f"decay-study flip_prob={args.noise} threshold={args.threshold} "
        f"trials={args.trials} seed={args.seed}"
    )
    _write_output(xp.render_decay_tsv(rows, comment), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="axiombox",
        description="Stabilizer encoding of Boolean-function axioms: "
        "dependence checks, measurements, demos, and oracle cross-checks.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=42, help="master RNG seed")
    common.add_argument("--runs", type=int, default=10000, help="samples per record")
    common.add_argument(
        "--noise", type=float, default=0.0, help="outcome bit-flip probability"
    )
    common.add_argument("--out", default=None, help="output path (default stdout)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prepare", parents=[common], help="tableau from an axiom file")
    p.add_argument("--axioms", required=True, help="file of signed Pauli lines")
    p.set_defaults(func=cmd_prepare)

    p = sub.add_parser("blackbox", parents=[common], help="apply a black box")
    p.add_argument("--state", required=True, help="tableau file")
    p.add_argument("--config", required=True, help="black-box config file")
    p.set_defaults(func=cmd_blackbox)

    p = sub.add_parser("check", parents=[common], help="classify a proposition")
    p.add_argument("--axioms", required=True, help="file of signed Pauli lines")
    p.add_argument("--prop", required=True, help="proposition as Pauli letters")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("measure", parents=[common], help="measure one observable")
    p.add_argument("--state", required=True, help="tableau file")
    p.add_argument("--obs", required=True, help="observable as Pauli letters")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("sample", parents=[common], help="sampled joint measurement")
    p.add_argument("--state", required=True, help="tableau file")
    p.add_argument("--obs", required=True, help="comma-separated observables")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("enumerate", parents=[common], help="count (in)dependent propositions")
    p.add_argument("--n", type=int, default=None, help="qubit count")
    p.add_argument("--axioms", default=None, help="optional axiom file")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("ghz-demo", parents=[common], help="three-qubit contradiction report")
    p.add_argument("--config", default=None, help="black-box config file (3 functions)")
    p.add_argument("--labels", default=None, help="labels like y0,y0,y0")
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p.set_defaults(func=cmd_ghz_demo)

    p = sub.add_parser("q1-demo", parents=[common], help="single-qubit state/basis grid")
    p.add_argument("--config", default=None, help="config file (1 function)")
    p.add_argument("--labels", default=None, help="label like y1")
    p.set_defaults(func=cmd_q1_demo)

    p = sub.add_parser("q2-demo", parents=[common], help="Bell-state three-basis grid")
    p.add_argument("--config", default=None, help="config file (2 functions)")
    p.add_argument("--labels", default=None, help="labels like y2,y2")
    p.set_defaults(func=cmd_q2_demo)

    p = sub.add_parser("oracle-compare", parents=[common], help="tableau vs dense oracle")
    p.add_argument("--n", type=int, required=True, help="qubit count")
    p.add_argument("--trials", type=int, default=100, help="random cases")
    p.set_defaults(func=cmd_oracle_compare)

    p = sub.add_parser("decay-study", parents=[common], help="misclassification decay table")
    p.add_argument("--threshold", type=float, default=0.25, help="imbalance threshold")
    p.add_argument(
        "--lengths", default="10,20,40,80", help="comma-separated run lengths"
    )
    p.add_argument("--trials", type=int, default=10000, help="trials per length")
    p.set_defaults(func=cmd_decay_study)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
