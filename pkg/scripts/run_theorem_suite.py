"""Randomized rotant-invariance run (the acceptance configuration by default)."""
import argparse
import json
import time
from dataclasses import asdict, dataclass, field

from rotorlab.harness import default_threads, property_suite
from rotorlab.tangle import Orientation


@dataclass
class SuiteConfig:
    seed: int = 7
    trials: int = 200
    n_range: tuple = (3, 4, 5)
    max_crossings: int = 14
    reversing_trials: int = 50      # extra orientation-reversing pairs at n = 6
    reversing_n: tuple = (6,)
    threads: int = field(default_factory=default_threads)
    out: str = "suite_summary.json"


def main(cfg: SuiteConfig) -> int:
    t0 = time.time()
    runs = {
        "mixed": property_suite(cfg.seed, cfg.trials, cfg.n_range, cfg.max_crossings, threads=cfg.threads,
                                reproducer_dir="."),
        "reversing": property_suite(cfg.seed, cfg.reversing_trials, cfg.reversing_n, cfg.max_crossings,
                                    orientation=Orientation.REVERSING, threads=cfg.threads, reproducer_dir="."),
    }
    for name, s in runs.items():
        print(f"== {name}")
        print(s.table())
    print(f"elapsed {time.time() - t0:.0f}s")
    with open(cfg.out, "w") as fh:
        json.dump({"config": asdict(cfg), **{k: v.as_json() for k, v in runs.items()}}, fh, indent=1, sort_keys=True)
    return 0 if all(s.clean for s in runs.values()) else 1


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    for f, v in asdict(SuiteConfig()).items():
        p.add_argument("--" + f.replace("_", "-"), type=type(v) if not isinstance(v, tuple) else
                       (lambda s: tuple(int(x) for x in s.split(","))), default=v)
    raise SystemExit(main(SuiteConfig(**vars(p.parse_args()))))
