"""Counterexample searches: Conway for reversing rotants, H_1 of the double cover for any rotants."""
import argparse
import json
import time
from dataclasses import asdict, dataclass

from rotorlab.harness import search_conway_counterexample, search_homology_example, write_reproducer


@dataclass
class SearchConfig:
    kind: str = "homology"          # or "conway"
    seed: int = 9
    budget: int = 1500
    max_crossings: int = 45
    out_dir: str = "."


def main(cfg: SearchConfig) -> int:
    t0 = time.time()
    if cfg.kind == "conway":
        hit = search_conway_counterexample(cfg.seed, cfg.budget, (6, 8), max_crossings=cfg.max_crossings,
                                           skein_budget=min(cfg.max_crossings, 24))
    else:
        hit = search_homology_example(cfg.seed, cfg.budget, (3, 4), max_crossings=cfg.max_crossings)
    print(f"elapsed {time.time() - t0:.0f}s")
    if hit is None:
        print("no example within budget")
        return 0
    key = "conway" if cfg.kind == "conway" else "h1"
    print(json.dumps({key: hit[key], "trial": hit["trial"]}, indent=1))
    print("reproducer:", write_reproducer(hit, cfg.out_dir))
    return 0


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    for f, v in asdict(SearchConfig()).items():
        p.add_argument("--" + f.replace("_", "-"), type=type(v), default=v)
    raise SystemExit(main(SearchConfig(**vars(p.parse_args()))))
