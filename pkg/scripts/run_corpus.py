"""Run every .ak script under scripts/ak and print one summary line per file."""

import argparse
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from akinv.dsl import parse
from akinv.runner import RunOptions, run

HERE = Path(__file__).resolve().parent


@dataclass
class Config:
    corpus: Path = HERE / "ak"
    bound: int | None = None
    # scripts whose commands are all meant to fail or error
    expect_errors: tuple = ("failures.ak",)


def main(cfg: Config) -> int:
    bad = 0
    for path in sorted(cfg.corpus.glob("*.ak")):
        t0 = time.perf_counter()
        report = run(parse(path.read_text()), RunOptions(bound=cfg.bound))
        dt = time.perf_counter() - t0
        c = report.counts()
        expected = "error" if path.name in cfg.expect_errors else "pass"
        ok = report.status == expected
        bad += not ok
        print(f"{path.name:24s} {report.status:6s} pass={c['pass']:3d} fail={c['fail']:2d} "
              f"error={c['error']:2d} {dt:6.2f}s {'ok' if ok else 'UNEXPECTED'}")
    return 1 if bad else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--corpus", type=Path, default=Config.corpus)
    ap.add_argument("--bound", type=int)
    a = ap.parse_args()
    sys.exit(main(Config(corpus=a.corpus, bound=a.bound)))
