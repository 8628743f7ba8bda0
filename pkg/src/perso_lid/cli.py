"""Command-line interface: ``perso-lid <command> ...``.

Commands: normalize, synthesize, train, identify, benchmark. The default
configuration directory (profiles, mapping tables, cluster files) can be
replaced through the ``PERSO_LID_CONFIG`` environment variable.
"""

from __future__ import annotations

import argparse
import logging
import shlex
import sys
from pathlib import Path

from . import __version__
from .dataset import (Dataset, build_benchmark, file_digest, read_corpus, read_dataset,
                      write_corpus, write_dataset)
from .evaluate import ExternalPredictor, benchmark
from .hier import DEFAULT_TAU, fit_hierarchical, load_clusters
from .models import load_model, save_model, train_model
from .normalize import normalize_pipeline, strip_markup, unify_numerals
from .profiles import CONVENTIONAL_ONLY, data_dir, load_profiles
from .scriptmap import load_mappings
from .synth import NOISE_LEVELS, corrupt_corpus

log = logging.getLogger("perso_lid")


class CLIError(Exception):
    pass


def _levels(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"levels must be comma-separated integers: {text!r}")


def _corpus_files(directory: Path) -> list[Path]:
    if not directory.is_dir():
        raise CLIError(f"input directory {directory} does not exist")
    return sorted(p for p in directory.iterdir() if p.suffix == ".txt")


# --------------------------------------------------------------------------
# commands


def cmd_normalize(args) -> int:
    profiles = load_profiles(args.profiles)
    out = Path(args.out)
    files = _corpus_files(Path(args.input))
    for path in files:
        if path.stem not in profiles:
            raise CLIError(f"{path}: no profile for language {path.stem!r}")
    out.mkdir(parents=True, exist_ok=True)
    rows = []
    for path in files:
        try:
            raw = path.read_text(encoding="utf-8", errors="replace")
        except OSError as exc:
            raise CLIError(f"{path}: {exc}") from None
        sentences = []
        for para in raw.splitlines():
            sentences.extend(normalize_pipeline(para, profiles[path.stem]))
        if not sentences:
            log.warning("%s: no sentences survived normalization", path)
        target = out / path.name
        write_corpus(sentences, target)
        rows.append(f"{path.stem}\t{len(sentences)}\t{file_digest(target)}")
    (out / "manifest.tsv").write_text("language\tsentences\tsha256\n" + "".join(
        r + "\n" for r in rows), encoding="utf-8")
    return 0


def _tables(args):
    directory = args.tables or data_dir() / "mappings"
    return list(load_mappings(directory, load_profiles(args.profiles)).values())


def cmd_synthesize(args) -> int:
    if not args.allow_any_level:
        bad = [lv for lv in args.levels if lv not in NOISE_LEVELS]
        if bad:
            raise CLIError(f"levels {bad} are outside {NOISE_LEVELS}; "
                           "pass --allow-any-level to override")
    tables = _tables(args)
    out = Path(args.out)
    corpus = {p.stem: read_corpus(p, p.stem) for p in _corpus_files(Path(args.input))}
    if args.benchmark:
        bench = build_benchmark(corpus, tables, seed=args.seed, levels=args.levels,
                                low_resource_rules=not args.plain_split)
        for split, configs in (("train", bench.train), ("test", bench.test)):
            (out / split).mkdir(parents=True, exist_ok=True)
            for mode, ds in configs.items():
                path = out / split / f"{mode}.tsv"
                write_dataset(ds, path)
                bench.manifest.digests[f"{split}/{mode}.tsv"] = file_digest(path)
        bench.manifest.write(out / "manifest.tsv")
        return 0
    out.mkdir(parents=True, exist_ok=True)
    have_tables = {t.source_lang for t in tables}
    for lang, sents in corpus.items():
        if lang in CONVENTIONAL_ONLY or lang not in have_tables:
            log.info("%s: no mapping table, skipped", lang)
            continue
        noisy = corrupt_corpus(Dataset(sents), tables, args.levels, args.seed,
                               allow_any_level=args.allow_any_level)
        for level, ds in noisy.items():
            write_corpus(ds.sentences, out / f"{lang}.{level}.txt")
    return 0


def _resolve_clusters(spec: str):
    path = Path(spec)
    if not path.exists():
        path = data_dir() / "clusters" / spec
    if not path.exists():
        raise CLIError(f"cluster file {spec!r} not found")
    return load_clusters(path)


def _hyper(args, kind: str) -> dict:
    if kind == "subword_linear":
        return {"dim": args.dim, "lr": args.lr, "epochs": args.epochs, "loss": args.loss}
    if kind == "mlp":
        return {"hidden": args.hidden, "max_iter": args.max_iter, "batch": args.batch}
    return {}


def cmd_train(args) -> int:
    data = read_dataset(args.data)
    if len(data) == 0:
        raise CLIError(f"{args.data}: dataset is empty")
    kind = {"subword": "subword_linear"}.get(args.kind, args.kind)
    if kind == "hierarchical":
        base = {"subword": "subword_linear"}.get(args.base, args.base)
        clusters = "auto" if args.clusters == "auto" else _resolve_clusters(args.clusters)
        model = fit_hierarchical(data.texts, data.labels, clusters, tau=args.tau, kind=base,
                                 seed=args.seed, holdout=args.holdout, **_hyper(args, base))
        log.info("clusters: %s", [sorted(c) for c in model.clusters.clusters])
    else:
        model = train_model(kind, data.texts, data.labels, seed=args.seed, **_hyper(args, kind))
    out = Path(args.out)
    if not out.parent.exists():
        raise CLIError(f"cannot write {out}: directory does not exist")
    save_model(model, out)
    return 0


def _clean_line(line: str) -> str:
    return unify_numerals(strip_markup(line))


def cmd_identify(args) -> int:
    model = load_model(args.model)
    stream = open(args.input, encoding="utf-8", errors="replace") if args.input else \
        open(sys.stdin.fileno(), encoding="utf-8", errors="replace", closefd=False)
    with stream:
        lines = [_clean_line(line.rstrip("\n")) for line in stream]
    for label, prob in model.predict_many(lines):
        sys.stdout.write(f"{label}\t{prob:.6f}\n")
    return 0


def _named(items, what: str) -> dict[str, str]:
    out = {}
    for item in items or []:
        name, sep, value = item.partition("=")
        if not sep or not name or not value:
            raise CLIError(f"{what} must look like NAME=VALUE, got {item!r}")
        out[name] = value
    return out


def cmd_benchmark(args) -> int:
    models = {name: load_model(path) for name, path in _named(args.model, "--model").items()}
    for name, cmd in _named(args.external, "--external").items():
        models[name] = ExternalPredictor(shlex.split(cmd), name=name)
    if not models:
        raise CLIError("no models given")
    datasets = {}
    for mode, path in _named(args.data, "--data").items():
        if not Path(path).exists():
            raise CLIError(f"dataset file {path} for mode {mode} does not exist")
        datasets[mode] = read_dataset(path, mode)
    pair = None
    if args.pair:
        pair = tuple(args.pair.split(","))
        if len(pair) != 2:
            raise CLIError("--pair takes ROOT,HIER")
    else:
        hier = [n for n, m in models.items() if getattr(m, "kind", "") == "hierarchical"]
        others = [n for n in models if n not in hier]
        if len(models) == 2 and len(hier) == 1:
            pair = (others[0], hier[0])
    try:
        result = benchmark(models, datasets, pair)
    except ValueError as exc:
        raise CLIError(str(exc)) from None
    if args.format == "tsv":
        for p in result.write_tsv(args.out):
            log.info("wrote %s", p)
    else:
        text = result.to_text()
        if args.out:
            Path(args.out).mkdir(parents=True, exist_ok=True)
            (Path(args.out) / "report.txt").write_text(text, encoding="utf-8")
        sys.stdout.write(text)
    return 0


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="perso-lid", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("normalize", parents=[common], help="clean raw text into one sentence per line")
    s.add_argument("--in", dest="input", required=True, help="directory of <code>.txt files")
    s.add_argument("--out", required=True)
    s.add_argument("--profiles", help="profile directory (default: config directory)")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("synthesize", parents=[common], help="generate noisy text or full benchmark datasets")
    s.add_argument("--in", dest="input", required=True, help="directory of clean <code>.txt")
    s.add_argument("--out", required=True)
    s.add_argument("--tables", help="mapping table directory")
    s.add_argument("--profiles", help="profile directory")
    s.add_argument("--levels", type=_levels, default=list(NOISE_LEVELS))
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--allow-any-level", action="store_true")
    s.add_argument("--benchmark", action="store_true",
                   help="write train/test TSVs for CLEAN, NOISY-*, ALL and MERGED")
    s.add_argument("--plain-split", action="store_true",
                   help="with --benchmark: plain 80/20 split, no low-resource upsampling")
    s.set_defaults(func=cmd_synthesize)

    s = sub.add_parser("train", parents=[common], help="train a model on a dataset TSV")
    s.add_argument("--data", required=True, help="TSV of label, level, text")
    s.add_argument("--kind", required=True,
                   choices=["mnb", "mlp", "subword", "subword_linear", "hierarchical"])
    s.add_argument("--base", default="subword", choices=["mnb", "mlp", "subword"],
                   help="model kind of the hierarchical root and experts")
    s.add_argument("--clusters", default="auto", help="'auto' or a cluster file")
    s.add_argument("--tau", type=float, default=DEFAULT_TAU)
    s.add_argument("--holdout", type=float, default=0.0,
                   help="share of training data used to measure confusion for --clusters auto")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--dim", type=int, default=64)
    s.add_argument("--lr", type=float, default=1.0)
    s.add_argument("--epochs", type=int, default=25)
    s.add_argument("--loss", default="softmax", choices=["softmax", "hs"])
    s.add_argument("--hidden", type=int, default=500)
    s.add_argument("--max-iter", type=int, default=500)
    s.add_argument("--batch", type=int, default=1000)
    s.set_defaults(func=cmd_train)

    s = sub.add_parser("identify", parents=[common], help="label each input line")
    s.add_argument("--model", required=True)
    s.add_argument("input", nargs="?", help="input file (default: stdin)")
    s.set_defaults(func=cmd_identify)

    s = sub.add_parser("benchmark", parents=[common], help="score models on datasets")
    s.add_argument("--model", action="append", help="NAME=PATH (repeatable)")
    s.add_argument("--external", action="append", help="NAME=COMMAND line-protocol predictor")
    s.add_argument("--data", action="append", required=True, help="MODE=PATH (repeatable)")
    s.add_argument("--pair", help="ROOT,HIER model names for significance rows")
    s.add_argument("--out", help="output directory")
    s.add_argument("--format", choices=["tsv", "text"], default="text")
    s.set_defaults(func=cmd_benchmark)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    if args.command == "benchmark" and args.format == "tsv" and not args.out:
        parser.error("--format tsv needs --out")
    try:
        return args.func(args)
    except (CLIError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
