"""Free-point search strategies and the six recorded verifications.

Three candidate orders, all fully deterministic:

* exhaustive - every point of P^n(E) in canonical index order; if it
  completes without a hit, no free point exists for these parameters
  (for q > 2 that would contradict the existence theorem and is flagged
  as such).
* sweep - points (a^{e_0} : ... : a^{e_{n-1}} : 1) with a the top-level
  generator, exponent tuples in row-major order (last exponent varies
  fastest), matching the shape of the recorded witnesses.
* random - the same point shape with exponents drawn from a
  counter-based generator keyed by (seed, counter), see `splitmix64`.
  No platform RNG is involved, so candidate sequences are reproducible
  across machines.

Searches count candidates against a budget and report the first free
point in candidate order, so repeated runs (and chunked parallel runs)
return byte-identical certificates.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from .errors import DegreeMismatch, Exhausted, ParamMismatch, RaggedInput
from .fields import FieldTower, make_tower
from .forms import ParamSet, ProjectivePoint, point_at_index, point_count
from .orbit import OrbitCertificate, is_free_point

MASK64 = (1 << 64) - 1


def splitmix64(seed: int, counter: int) -> int:
    """Counter-based deterministic 64-bit stream.

    Output for stream position `counter` under key `seed`:
    z = (seed + (counter+1) * 0x9E3779B97F4A7C15) mod 2^64, followed by
    the two standard xorshift-multiply mixes (multipliers
    0xBF58476D1CE4E5B9 and 0x94D049BB133111EB) and a final shift by 31.
    """
    z = (seed + (counter + 1) * 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class SearchConfig:
    """Deterministic search specification.

    sweep_ranges gives one exponent range (inclusive start, exclusive
    stop) per non-pinned coordinate; None means [0, Q-1) for each,
    covering the full multiplicative range of a generator.
    """

    strategy: str = "sweep"
    seed: int = 0
    budget: int = 10**6
    sweep_ranges: tuple[tuple[int, int], ...] | None = None

    def __post_init__(self):
        if self.strategy not in ("exhaustive", "sweep", "random"):
            raise ParamMismatch(f"unknown strategy {self.strategy!r}")
        if self.budget < 1:
            raise ParamMismatch("budget must be positive")


@dataclass(frozen=True)
class WitnessCase:
    """One recorded verification: tower, point, parameters."""

    case: int
    label: str
    n: int
    d: int
    q: int
    base_level: int
    tower_spec: dict
    point_exponents: tuple[int, ...]

    @property
    def params(self) -> ParamSet:
        return ParamSet(self.n, self.d, self.q)


def _fixture_files():
    root = resources.files("freepoint").joinpath("fixtures")
    return sorted(
        (f for f in root.iterdir() if f.name.startswith("witness_case_")),
        key=lambda f: f.name,
    )


def load_witness_cases() -> list[WitnessCase]:
    """The six recorded cases, in fixture order."""
    out = []
    for f in _fixture_files():
        doc = json.loads(f.read_text())
        out.append(
            WitnessCase(
                case=doc["case"],
                label=doc["label"],
                n=doc["n"],
                d=doc["d"],
                q=doc["q"],
                base_level=doc["base_level"],
                tower_spec=doc["tower"],
                point_exponents=tuple(doc["point_exponents"]),
            )
        )
    return out


def fixture_digests() -> dict[str, str]:
    """SHA-256 of each shipped fixture file, for run manifests."""
    import hashlib

    return {
        f.name: hashlib.sha256(f.read_bytes()).hexdigest() for f in _fixture_files()
    }


def witness_point(case: WitnessCase, tower: FieldTower) -> ProjectivePoint:
    a = tower.gen(tower.top)
    return ProjectivePoint(tower, tower.top, [a**e for e in case.point_exponents])


def verify_witness(case: WitnessCase) -> OrbitCertificate:
    """Rebuild the recorded tower and point, and run the freeness test.

    Tower validation re-checks the modulus, so a corrupted fixture fails
    before any verdict is produced.
    """
    tower = make_tower(case.tower_spec["p"], case.tower_spec["levels"])
    if tower.cardinality(case.base_level) != case.q:
        raise ParamMismatch(
            f"case {case.case}: base level has cardinality "
            f"{tower.cardinality(case.base_level)}, expected q={case.q}"
        )
    if len(case.point_exponents) != case.n + 1:
        raise RaggedInput(f"case {case.case}: point needs {case.n + 1} exponents")
    P = witness_point(case, tower)
    return is_free_point(P, case.base_level, case.params)


# -- candidate generation -------------------------------------------------


def _candidates(params: ParamSet, tower: FieldTower, level: int, config: SearchConfig):
    """Yield (candidate_index, coordinate list) in deterministic order.

    Coordinates come unnormalized; the caller builds ProjectivePoint
    only for candidates that survive its cheap filters.
    """
    n = params.n
    q_top = tower.cardinality(level)
    if config.strategy == "exhaustive":
        total = point_count(n, q_top)
        for i in range(min(total, config.budget)):
            yield i, list(point_at_index(n, tower, level, i).coords)
        return
    ranges = config.sweep_ranges or tuple((0, q_top - 1) for _ in range(n))
    if len(ranges) != n:
        raise RaggedInput(f"need {n} sweep ranges, got {len(ranges)}")
    a = tower.gen(level)
    one = tower.one(level)
    if config.strategy == "sweep":
        spans = [stop - start for start, stop in ranges]
        if any(s <= 0 for s in spans):
            raise RaggedInput("empty sweep range")
        total = 1
        for s in spans:
            total *= s
        starts = [a ** start for start, _ in ranges]
        exps = [start for start, _ in ranges]
        vals = list(starts)
        for i in range(min(total, config.budget)):
            yield i, vals + [one]
            # odometer step, last exponent fastest; powers advance by
            # one multiplication instead of a fresh exponentiation
            for j in range(n - 1, -1, -1):
                exps[j] += 1
                if exps[j] < ranges[j][1]:
                    vals[j] = vals[j] * a
                    break
                exps[j] = ranges[j][0]
                vals[j] = starts[j]
        return
    # random strategy: unbounded stream, budget-limited
    power_cache: dict[int, object] = {}
    for i in range(config.budget):
        coords = []
        for j, (start, stop) in enumerate(ranges):
            e = start + splitmix64(config.seed, i * n + j) % (stop - start)
            v = power_cache.get(e)
            if v is None:
                v = power_cache[e] = a**e
            coords.append(v)
        yield i, coords + [one]


@dataclass
class SearchReport:
    """Outcome of a free-point search."""

    params: ParamSet
    strategy: str
    seed: int
    budget: int
    found: bool
    candidates_tested: int
    exhausted_space: bool
    certificate: OrbitCertificate | None = None
    candidate_index: int | None = None
    theorem_contradicted: bool = field(default=False)

    def to_dict(self) -> dict:
        return {
            "params": {"n": self.params.n, "d": self.params.d, "q": self.params.q},
            "strategy": self.strategy,
            "seed": self.seed,
            "budget": self.budget,
            "found": self.found,
            "candidates_tested": self.candidates_tested,
            "exhausted_space": self.exhausted_space,
            "candidate_index": self.candidate_index,
            "theorem_contradicted": self.theorem_contradicted,
            "certificate": self.certificate.to_dict() if self.certificate else None,
        }


def run_search(
    params: ParamSet, tower: FieldTower, config: SearchConfig, base_level: int | None = None
) -> SearchReport:
    """Drive a search to completion and report, never raising on a miss."""
    if base_level is None:
        base_level = tower.level_of_cardinality(params.q)
        if base_level is None:
            raise ParamMismatch(f"tower has no level of cardinality {params.q}")
    level = tower.top
    if tower.extension_degree(level, base_level) != params.m:
        raise DegreeMismatch(
            f"top level must have degree m={params.m} over the base"
        )
    tested = 0
    last_index = -1
    zero_raw = tower.zero_raw(level)
    for i, coords in _candidates(params, tower, level, config):
        tested += 1
        last_index = i
        raw = tuple(c.val for c in coords)
        # A zero coordinate admits the vanishing form x_i * x_j^(d-1), and
        # a repeated pair admits (x_i - x_j) * x_i^(d-1); neither kind of
        # candidate can be free (the patterns are scaling-invariant, so
        # testing before normalization is sound). Skip the rank test.
        if zero_raw in raw or len(set(raw)) != len(raw):
            continue
        P = ProjectivePoint(tower, level, coords)
        cert = is_free_point(P, base_level, params)
        if cert.free:
            return SearchReport(
                params,
                config.strategy,
                config.seed,
                config.budget,
                True,
                tested,
                False,
                certificate=cert,
                candidate_index=i,
            )
    exhausted_space = False
    if config.strategy == "exhaustive":
        exhausted_space = last_index + 1 == point_count(params.n, tower.cardinality(level))
    report = SearchReport(
        params, config.strategy, config.seed, config.budget, False, tested, exhausted_space
    )
    if exhausted_space and params.q > 2:
        # An exhausted space with no free point would contradict the
        # existence theorem for q > 2; surface it as loudly as possible.
        report.theorem_contradicted = True
    return report


def find_free_point(
    params: ParamSet, tower: FieldTower, config: SearchConfig, base_level: int | None = None
) -> OrbitCertificate:
    """First free point in the configured candidate order.

    Raises Exhausted when the budget runs out or (exhaustive strategy)
    when the whole space is free-point-free; the exception carries the
    report, and the theorem_contradicted flag marks the showstopper.
    """
    report = run_search(params, tower, config, base_level)
    if report.found:
        return report.certificate
    exc = Exhausted(
        "no free point found: "
        + ("candidate space exhausted" if report.exhausted_space else "budget exhausted")
        + (" -- CONTRADICTS the existence theorem" if report.theorem_contradicted else "")
    )
    exc.report = report
    raise exc


def search_q2(params: ParamSet, tower: FieldTower, config: SearchConfig) -> SearchReport:
    """Experimental search over a q = 2 base (no theorem backs existence).

    With the exhaustive strategy and enough budget the report is a
    definitive yes/no for these parameters.
    """
    if params.q != 2:
        raise ParamMismatch("search_q2 is for q = 2 bases only")
    return run_search(params, tower, config)
