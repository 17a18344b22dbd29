"""Empirical checks of rotant invariance, and counterexample searches.

A rotant pair is L1 = S u R and L2 = S u d(R).  Every check yields one of
"holds", "violated" or "not-applicable" (when a hypothesis such as
"orientation preserving" or "no closed rotor components" fails).
"""
from __future__ import annotations

import json
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .diagram import Diagram, reverse
from .exactmat import GaussRational, LaurentPoly, char_poly, unit_circle_point
from .generate import random_diagram
from .invariants import (DEFAULT_OMEGA_T, BudgetExceeded, alexander_polynomial, conway_from_seifert,
                         conway_skein, double_cover_h1, goeritz, invariant_report, linking_data,
                         murasugi_routes, murasugi_signature, standard_hermitian_matrix,
                         surface_framing_trace)
from .tangle import (Orientation, RotorLink, classify_orientation, compose_tracked, crossing_sums,
                     flype0, has_closed_components, random_rotor_link, rotant_rotor,
                     rotor_link_from_json, strands)

HOLDS, VIOLATED, NA = "holds", "violated", "not-applicable"

# checks whose violation would contradict a proved statement
THEOREM_CHECKS = ("components", "total_linking", "linking_matrix", "framed_trace",
                  "murasugi_signature", "determinant", "goeritz_charpoly", "tl_signature",
                  "hermitian_charpoly", "conway", "arc_crossing_sums")


def _verdict(ok: bool) -> str:
    return HOLDS if ok else VIOLATED


# ---------------------------------------------------------------------------
# one rotant pair


@dataclass
class RotantReport:
    n: int
    orientation: str
    closed_rotor_components: bool
    report1: dict
    report2: dict
    verdicts: dict = field(default_factory=dict)

    def violated(self) -> list:
        return [k for k, v in self.verdicts.items() if v == VIOLATED]

    def as_json(self) -> dict:
        return {"n": self.n, "orientation": self.orientation,
                "closed_rotor_components": self.closed_rotor_components,
                "L1": self.report1, "L2": self.report2, "verdicts": dict(sorted(self.verdicts.items()))}


def _matched_linking(c1, c2, d1: Diagram, d2: Diagram) -> Optional[bool]:
    """Compare framed linking matrices under the stator-induced matching."""
    k1, k2 = c1.component_keys, c2.component_keys
    if any(not k for k in k1) or any(not k for k in k2):
        return None
    if sorted(map(sorted, k1)) != sorted(map(sorted, k2)):
        return False
    where = {k: j for j, k in enumerate(k2)}
    perm = [where[k] for k in k1]
    a1 = linking_data(d1).matrix
    a2 = linking_data(d2).matrix
    m = len(perm)
    return all(a1[i, j] == a2[perm[i], perm[j]] for i in range(m) for j in range(m))


def compare_rotants(rl: RotorLink, omega_samples: Sequence = DEFAULT_OMEGA_T, k: int = 0,
                    skein_budget: int = 14) -> RotantReport:
    cls = classify_orientation(rl.rotor)
    closed = has_closed_components(rl.rotor)
    c1 = compose_tracked(rl.stator, rl.rotor, framed=True)
    c2 = compose_tracked(rl.stator, rotant_rotor(rl, k), framed=True)
    d1, d2 = c1.diagram, c2.diagram
    r1 = invariant_report(d1, omega_samples)
    r2 = invariant_report(d2, omega_samples)
    v = {}
    v["components"] = _verdict(r1["components"] == r2["components"])
    v["total_linking"] = _verdict(r1["lk_total"] == r2["lk_total"])
    v["framed_trace"] = _verdict(r1["trace"] == r2["trace"])
    if closed:
        v["linking_matrix"] = NA
    else:
        same = _matched_linking(c1, c2, d1, d2)
        v["linking_matrix"] = NA if same is None else _verdict(same)
    v["murasugi_signature"] = _verdict(r1["murasugi"] == r2["murasugi"])
    v["determinant"] = _verdict(r1["determinant"] == r2["determinant"])
    v["goeritz_charpoly"] = _verdict(r1["goeritz_charpoly"] == r2["goeritz_charpoly"])
    # not a theorem: recorded for the homology search
    v["double_cover_h1"] = "equal" if r1["h1_double_cover"] == r2["h1_double_cover"] else "different"
    if cls == Orientation.PRESERVING:
        v["tl_signature"] = _verdict(r1["tl_signatures"] == r2["tl_signatures"])
        one = GaussRational(1)
        ok = True
        for t in omega_samples:
            xi = one - unit_circle_point(t)
            if xi.is_zero():
                continue
            ok &= char_poly(standard_hermitian_matrix(d1, xi)) == char_poly(standard_hermitian_matrix(d2, xi))
        v["hermitian_charpoly"] = _verdict(ok)
        v["conway"] = _verdict(_conway_equal(d1, d2, skein_budget))
    else:
        v["tl_signature"] = v["hermitian_charpoly"] = v["conway"] = NA
    v["arc_crossing_sums"] = check_arc_crossing_sums(rl)
    return RotantReport(rl.n, cls.value, closed, r1, r2, v)


def _conway_equal(d1: Diagram, d2: Diagram, skein_budget: int) -> bool:
    a, b = conway_from_seifert(d1), conway_from_seifert(d2)
    try:
        if max(d1.n_crossings, d2.n_crossings) <= skein_budget:
            a2, b2 = conway_skein(d1), conway_skein(d2)
            if a2 != a or b2 != b:
                raise AssertionError("Conway routes disagree")
    except BudgetExceeded:
        pass
    return a == b


def check_arc_crossing_sums(rl: RotorLink) -> str:
    """Signed crossing sums between rotor strands survive the matching flype.

    Arcs are identified by their endpoints: in the flyped rotor the arc with
    the endpoints of gamma_j is the image of some gamma_k.  Arcs are oriented
    from their a-point to their b-point; closed components keep the induced
    orientation and are compared as a multiset per arc.
    """
    r = rl.rotor
    f = flype0(r)
    sr, sf = strands(r), strands(f)

    def arcs(st):
        out = {}
        for i, s in enumerate(st):
            if not s.closed:
                if s.start % 2 == s.end % 2:
                    return None
                out[frozenset((s.start, s.end))] = (i, 1 if s.start % 2 == 0 else -1)
        return out

    ar, af = arcs(sr), arcs(sf)
    if ar is None or af is None:
        return NA
    if set(ar) != set(af):
        return VIOLATED
    ir = crossing_sums(r, {i: sg for i, sg in ar.values()})
    i_f = crossing_sums(f, {i: sg for i, sg in af.values()})

    def get(table, i, j):
        return table.get((min(i, j), max(i, j)), 0)

    keys = sorted(ar, key=sorted)
    for x in keys:
        for y in keys:
            if get(ir, ar[x][0], ar[y][0]) != get(i_f, af[x][0], af[y][0]):
                return VIOLATED
    # closed components, with the orientation each tangle carries
    nr, nf = crossing_sums(r), crossing_sums(f)
    cr = [i for i, s in enumerate(sr) if s.closed]
    cf = [i for i, s in enumerate(sf) if s.closed]
    for x in keys:
        if sorted(get(nr, ar[x][0], c) for c in cr) != sorted(get(nf, af[x][0], c) for c in cf):
            return VIOLATED
    return HOLDS


# ---------------------------------------------------------------------------
# cross-route checks on a single diagram


def cross_route_checks(d: Diagram, skein_budget: int = 14, rng: Optional[random.Random] = None) -> dict:
    """Independent computations of the same invariant must agree."""
    v = {}
    cz = conway_from_seifert(d)
    try:
        v["conway_routes"] = _verdict(conway_skein(d, max_crossings=skein_budget) == cz)
    except BudgetExceeded:
        v["conway_routes"] = NA
    r = murasugi_routes(d)
    v["murasugi_routes"] = _verdict(r.route_a == r.route_b)
    g = goeritz(d)
    alex = alexander_polynomial(d)
    det_g = abs(g.matrix.det())
    v["determinant_routes"] = _verdict(det_g == abs(alex.evaluate(-1)))
    h1 = double_cover_h1(d)
    v["h1_order"] = _verdict(h1.order() == det_g) if det_g else _verdict(h1.free_rank > 0)
    v["euler_framing"] = _verdict(g.euler == -surface_framing_trace(d))
    v["alexander_symmetry"] = _verdict(_symmetric_up_to_units(alex))
    if rng is not None and d.n_components() > 1:
        which = [i for i in range(d.n_components()) if rng.random() < 0.5] or [0]
        v["murasugi_orientation_free"] = _verdict(murasugi_signature(reverse(d, which)) == r.route_b)
    return v


def _symmetric_up_to_units(p: LaurentPoly) -> bool:
    if p.is_zero():
        return True
    q = p.invert()
    shifted = q.shift(p.min_exp() - q.min_exp())
    return shifted == p or shifted == -p


# ---------------------------------------------------------------------------
# suites


@dataclass
class Summary:
    trials: int = 0
    counts: dict = field(default_factory=dict)      # check -> verdict -> count
    violations: list = field(default_factory=list)  # reproducers

    def add(self, verdicts: dict) -> None:
        for k, v in verdicts.items():
            self.counts.setdefault(k, {}).setdefault(v, 0)
            self.counts[k][v] += 1

    @property
    def clean(self) -> bool:
        return not self.violations

    def as_json(self) -> dict:
        return {"trials": self.trials,
                "counts": {k: dict(sorted(v.items())) for k, v in sorted(self.counts.items())},
                "violations": self.violations}

    def table(self) -> str:
        lines = [f"trials: {self.trials}", f"{'check':28s} {'holds':>7s} {'violated':>9s} {'n/a':>6s}"]
        for k, v in sorted(self.counts.items()):
            other = {x: c for x, c in v.items() if x not in (HOLDS, VIOLATED, NA)}
            extra = "  " + ", ".join(f"{x}={c}" for x, c in sorted(other.items())) if other else ""
            lines.append(f"{k:28s} {v.get(HOLDS, 0):7d} {v.get(VIOLATED, 0):9d} {v.get(NA, 0):6d}{extra}")
        lines.append("clean" if self.clean else f"VIOLATIONS: {len(self.violations)}")
        return "\n".join(lines)


def trial_rng(seed, trial: int) -> random.Random:
    return random.Random(f"{seed}:{trial}")


def random_suite_link(rng: random.Random, n: int, max_crossings: int,
                      orientation=None, closed_rate: float = 0.2) -> RotorLink:
    """A rotor link with at most `max_crossings` crossings."""
    if orientation is None:
        orientation = (Orientation.REVERSING if n % 2 == 0 and rng.random() < 0.3
                       else Orientation.PRESERVING)
    for _ in range(100):
        dc = rng.randint(0, max(0, (max_crossings - 1) // n))
        sc = rng.randint(1, max(1, max_crossings - n * dc))
        rl = random_rotor_link(n, dc, sc, orientation, rng, allow_closed=rng.random() < closed_rate)
        if len(rl.stator.crossings) + len(rl.rotor.crossings) <= max_crossings:
            return rl
    raise RuntimeError("crossing budget too small for this arity")


def run_trial(seed, trial: int, n_range: Sequence[int], max_crossings: int,
              orientation=None, omega_samples: Sequence = DEFAULT_OMEGA_T) -> tuple:
    rng = trial_rng(seed, trial)
    n = rng.choice(list(n_range))
    rl = random_suite_link(rng, n, max_crossings, orientation)
    rep = compare_rotants(rl, omega_samples)
    verdicts = dict(rep.verdicts)
    d1 = compose_tracked(rl.stator, rl.rotor).diagram
    for k, v in cross_route_checks(d1, max_crossings, rng).items():
        verdicts["L1:" + k] = v
    bad = [k for k, v in verdicts.items() if v == VIOLATED]
    repro = None
    if bad:
        repro = {**rl.as_json(), "seed": seed, "trial": trial, "verdicts": dict(sorted(rep.verdicts.items()))}
    return verdicts, repro


def _run_trial_star(args):
    return run_trial(*args)


def default_threads() -> int:
    env = os.environ.get("ROTORLAB_THREADS")
    if env:
        return max(1, int(env))
    try:
        return max(1, len(os.sched_getaffinity(0)))
    except AttributeError:
        return os.cpu_count() or 1


def property_suite(seed, trials: int, n_range: Sequence[int] = (3, 4, 5), max_crossings: int = 14,
                   orientation=None, threads: int = 1, reproducer_dir: Optional[str] = None) -> Summary:
    """Run `trials` random rotant comparisons; stops at the first violation."""
    summary = Summary()
    jobs = [(seed, t, tuple(n_range), max_crossings, orientation) for t in range(trials)]
    if threads > 1 and trials > 1:
        ex = ProcessPoolExecutor(max_workers=threads)
        results = ex.map(_run_trial_star, jobs, chunksize=max(1, trials // (4 * threads)))
    else:
        ex = None
        results = (run_trial(*j) for j in jobs)
    try:
        for verdicts, repro in results:
            summary.trials += 1
            summary.add(verdicts)
            if repro is not None:
                summary.violations.append(repro)
                if reproducer_dir:
                    write_reproducer(repro, reproducer_dir)
                break
    finally:
        if ex is not None:
            ex.shutdown(cancel_futures=True)
    return summary


def write_reproducer(repro: dict, directory: str) -> str:
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, f"repro-{repro['seed']}-{repro['trial']}.json")
    with open(path, "w") as fh:
        json.dump(repro, fh, indent=1, sort_keys=True)
    return path


def replay(reproducer: dict) -> dict:
    """Re-run the rotant comparison recorded in a reproducer file."""
    rl = rotor_link_from_json({k: reproducer[k] for k in ("n", "stator", "rotor")})
    return dict(sorted(compare_rotants(rl).verdicts.items()))


def cross_route_suite(seed, trials: int, max_crossings: int = 12) -> Summary:
    summary = Summary()
    for t in range(trials):
        rng = trial_rng(seed, t)
        d = random_diagram(rng.randint(1, max_crossings), rng, random_unbounded=True)
        v = cross_route_checks(d, max_crossings, rng)
        summary.trials += 1
        summary.add(v)
        if any(x == VIOLATED for x in v.values()):
            summary.violations.append({"seed": seed, "trial": t, "diagram": d.as_json(), "verdicts": v})
    return summary


# ---------------------------------------------------------------------------
# searches


def search_conway_counterexample(seed, budget: int, n_even_range: Sequence[int] = (6, 8),
                                 max_crossings: int = 20, skein_budget: int = 20) -> Optional[dict]:
    """First orientation-reversing rotant pair with different Conway polynomials."""
    for t in range(budget):
        rng = trial_rng(seed, t)
        n = rng.choice([m for m in n_even_range if m % 2 == 0])
        rl = random_suite_link(rng, n, max_crossings, Orientation.REVERSING)
        d1 = compose_tracked(rl.stator, rl.rotor).diagram
        d2 = compose_tracked(rl.stator, rotant_rotor(rl)).diagram
        c1, c2 = conway_from_seifert(d1), conway_from_seifert(d2)
        if c1 == c2:
            continue
        # confirm with the skein route before reporting
        try:
            s1, s2 = conway_skein(d1, skein_budget), conway_skein(d2, skein_budget)
        except BudgetExceeded:
            continue
        if s1 != c1 or s2 != c2:
            raise AssertionError("Conway routes disagree on a search candidate")
        rep = compare_rotants(rl)
        return {**rl.as_json(), "seed": seed, "trial": t,
                "conway": [c1.to_json(), c2.to_json()],
                "verdicts": dict(sorted(rep.verdicts.items()))}
    return None


def search_homology_example(seed, budget: int, n_range: Sequence[int] = (3, 4, 5, 6),
                            max_crossings: int = 16, primes: Sequence[int] = (2, 3, 5, 7)) -> Optional[dict]:
    """First rotant pair whose double branched covers have different H_1."""
    for t in range(budget):
        rng = trial_rng(seed, t)
        n = rng.choice(list(n_range))
        rl = random_suite_link(rng, n, max_crossings)
        d1 = compose_tracked(rl.stator, rl.rotor).diagram
        d2 = compose_tracked(rl.stator, rotant_rotor(rl)).diagram
        h1, h2 = double_cover_h1(d1), double_cover_h1(d2)
        if h1 == h2:
            continue
        if h1.order() != h2.order():
            raise AssertionError("rotant pair with different determinants")
        return {**rl.as_json(), "seed": seed, "trial": t,
                "h1": [h1.to_json(), h2.to_json()],
                "h1_mod_p": {str(p): [h1.tensor_mod(p).to_json(), h2.tensor_mod(p).to_json()] for p in primes}}
    return None
