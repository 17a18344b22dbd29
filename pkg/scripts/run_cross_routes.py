"""Independent-route agreement on random link diagrams."""
import argparse
import time
from dataclasses import asdict, dataclass

from rotorlab.harness import cross_route_suite


@dataclass
class CrossRouteConfig:
    seed: int = 2
    trials: int = 500
    max_crossings: int = 12


def main(cfg: CrossRouteConfig) -> int:
    t0 = time.time()
    s = cross_route_suite(cfg.seed, cfg.trials, cfg.max_crossings)
    print(s.table())
    print(f"elapsed {time.time() - t0:.0f}s")
    return 0 if s.clean else 1


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    for f, v in asdict(CrossRouteConfig()).items():
        p.add_argument("--" + f.replace("_", "-"), type=type(v), default=v)
    raise SystemExit(main(CrossRouteConfig(**vars(p.parse_args()))))
