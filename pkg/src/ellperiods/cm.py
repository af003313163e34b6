"""Parameter search by complex multiplication, proof orchestration and
certificates.

For a prime n the search walks fundamental discriminants -D = -7, -8,
-11, ...  and looks for t with t^2 + D v^2 = 4n.  Each of n + 1 - t and
n + 1 + t is then the order of a curve with CM by the maximal order of
discriminant -D, so an odd unitary divisor d of one of them in the window
[dmin, dmax] gives a point of exact order d after multiplying a random
point by the cofactor.  The curve itself comes from a root of the
Hilbert class polynomial modulo n.
"""

from __future__ import annotations

import hashlib
import json
import logging
import math
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from . import polymod
from .basis import build_context
from .criteria import (BOUND_NOT_MET, CONGRUENCE_FAILED, INCONCLUSIVE, PENDING, PRIME,
                       STRONG_MIN_D, StrongContext, Verdict, check_bound_basic, check_bound_strong,
                       elliptic_aks_check, finalize, strong_elliptic_check)
from .errors import NoSolution, NoSquareRoot, NonInvertible, ParameterFailure, RetryA, RetryM
from .intervals import ln_bounds
from .periods import PeriodsRing
from .residue import (cornacchia, inv_mod, is_perfect_power, is_probable_prime, jacobi,
                      pollard_rho, primes_up_to, small_divisor_search)
from .weierstrass import (Curve, find_nonresidue, make_curve, quadratic_twist, random_point,
                          scalar_mul, short_curve, verify_exact_order)

log = logging.getLogger(__name__)

TABLE_ENV = "ELLPERIODS_HILBERT_TABLE"
DEFAULT_SEED = 1
DEFAULT_DISC_CAP = 10000
DEFAULT_DMAX_MULT = 3
# trial division certifies primality only this far; beyond it, it only screens
SMALL_PRIME_LIMIT = 97
BASIC = "basic"
STRONG = "strong"


class TableError(RuntimeError):
    pass


class NotInTable(KeyError):
    pass


# --- dmin --------------------------------------------------------------------

def compute_dmin(n: int) -> int:
    """ceil(4 (log2 n)^2 + 2), exactly."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if n & (n - 1) == 0:
        k = n.bit_length() - 1
        return 4 * k * k + 2
    # log2 n is irrational (indeed transcendental) here, so the value is never
    # an integer and tight enough brackets always settle the ceiling
    prec = 64
    while True:
        lo_n, hi_n = ln_bounds(n, prec)
        lo_2, hi_2 = ln_bounds(2, prec)
        lo = 4 * (lo_n / hi_2) ** 2 + 2
        hi = 4 * (hi_n / lo_2) ** 2 + 2
        if math.floor(lo) == math.floor(hi):
            return math.floor(lo) + 1
        prec *= 2


def strong_dmin(n: int) -> int:
    """Smallest d >= 2001 meeting the strong bound for n."""
    _, ln_hi = ln_bounds(n)
    need = math.ceil(ln_hi**2 / Fraction(173738, 100000) ** 2)
    d = max(STRONG_MIN_D, need)
    return d if d % 2 else d + 1


# --- discriminants and the class polynomial table ------------------------------

def _squarefree(m: int) -> bool:
    k = 2
    while k * k <= m:
        if m % (k * k) == 0:
            return False
        k += 1
    return True


def is_fundamental(disc: int) -> bool:
    """Is -disc a fundamental discriminant?"""
    if disc <= 0:
        return False
    if disc % 4 == 3:
        return _squarefree(disc)
    if disc % 4 == 0:
        m = disc // 4
        return m % 4 in (1, 2) and _squarefree(m)
    return False


def fundamental_discriminants(cap: int, start: int = 7):
    for disc in range(start, cap + 1):
        if is_fundamental(disc):
            yield disc


_TABLE_CACHE: dict[str, dict[int, list[int]]] = {}


def default_table_path() -> str:
    override = os.environ.get(TABLE_ENV)
    if override:
        return override
    return str(resources.files("ellperiods") / "data" / "hilbert.txt")


def load_hilbert_table(path: str | None = None) -> dict[int, list[int]]:
    """disc -> coefficients of H_{-disc}, lowest degree first.

    The file must sit next to ``<path>.sha256`` holding its hex SHA-256.
    """
    path = path or default_table_path()
    if path in _TABLE_CACHE:
        return _TABLE_CACHE[path]
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
        with open(path + ".sha256") as fh:
            expected = fh.read().split()[0].lower()
    except OSError as exc:
        raise TableError(f"cannot read class polynomial table: {exc}") from exc
    if hashlib.sha256(raw).hexdigest() != expected:
        raise TableError(f"checksum mismatch for {path}")
    table = {}
    for lineno, line in enumerate(raw.decode("ascii").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = [int(tok) for tok in line.split()]
        disc, deg, coeffs = fields[0], fields[1], fields[2:]
        if len(coeffs) != deg + 1 or coeffs[0] != 1:
            raise TableError(f"{path}:{lineno}: malformed record")
        table[disc] = coeffs[::-1]
    _TABLE_CACHE[path] = table
    return table


def hilbert_class_poly(disc: int, table: dict[int, list[int]] | None = None) -> list[int]:
    table = load_hilbert_table() if table is None else table
    if disc not in table:
        raise NotInTable(disc)
    return list(table[disc])


# --- the search --------------------------------------------------------------

@dataclass(frozen=True)
class CmParameters:
    disc: int
    t: int
    v: int
    eps: int
    d: int
    cofactor: int

    @property
    def order(self) -> int:
        return self.d * self.cofactor


def check_parameters(n: int, p: CmParameters, dmin: int, dmax: int) -> bool:
    order = n + 1 - p.eps * p.t
    return (p.t * p.t + p.disc * p.v * p.v == 4 * n
            and order == p.order
            and p.d % 2 == 1
            and dmin <= p.d <= dmax
            and p.cofactor > 1
            and math.gcd(p.d, p.cofactor) == 1
            and math.gcd(p.d, n * (n - 1) * (n + 1)) == 1)


def candidate_parameters(n: int, dmin: int, dmax: int, disc_cap: int = DEFAULT_DISC_CAP,
                         rng: random.Random | None = None, bound=None, table=None,
                         prime_d: bool = True):
    """Yield CmParameters in increasing discriminant order.

    ``bound(d)`` filters divisors (the criterion's own inequality);
    discriminants missing from ``table`` are skipped.  NonInvertible from
    the square root step propagates: it is a factor of n.

    The cofactor must exceed 1: otherwise the rational points of E are
    exactly the kernel and no auxiliary section M avoids it.  With
    ``prime_d`` only prime d are accepted.
    """
    rng = rng or random.Random(DEFAULT_SEED)
    forbidden = (n, n - 1, n + 1)
    for disc in fundamental_discriminants(disc_cap):
        if table is not None and disc not in table:
            continue
        if jacobi(-disc % n, n) == -1:
            log.debug("disc %d: -disc is not a square", disc)
            continue
        try:
            t, v = cornacchia(disc, n, rng)
        except (NoSquareRoot, NoSolution):
            log.debug("disc %d: no norm equation solution", disc)
            continue
        best = None
        for eps in (1, -1):
            order = n + 1 - eps * t
            if order <= 0:
                continue
            lo = dmin
            while True:
                d = small_divisor_search(order, lo, dmax, forbidden)
                if d is None or (d < order and (not prime_d or is_probable_prime(d))
                                 and (bound is None or bound(d))):
                    break
                lo = d + 1
            if d is not None and (best is None or d < best.d):
                best = CmParameters(disc, t, v, eps, d, order // d)
        if best is None:
            log.debug("disc %d: no admissible divisor in [%d, %d]", disc, dmin, dmax)
            continue
        if not check_parameters(n, best, dmin, dmax):  # pragma: no cover - post-check
            raise AssertionError(f"bad parameters {best}")
        yield best


def find_cm_parameters(n: int, dmin: int, dmax: int, disc_cap: int = DEFAULT_DISC_CAP,
                       rng: random.Random | None = None, bound=None, table=None,
                       prime_d: bool = True) -> CmParameters | None:
    """First admissible parameters, or None when the cap is exhausted."""
    return next(candidate_parameters(n, dmin, dmax, disc_cap, rng, bound, table, prime_d), None)


def curve_from_j(j: int, n: int) -> Curve:
    """y^2 = x^3 + 3k x + 2k with k = j / (1728 - j)."""
    j %= n
    if j in (0, 1728 % n):
        raise ValueError("j = 0 and j = 1728 are excluded")
    k = j * inv_mod(1728 - j, n) % n
    E = short_curve(3 * k, 2 * k, n)
    if E.j_invariant() != j:
        raise ArithmeticError("j-invariant check failed")
    return E


def find_torsion_point(E: Curve, n: int, p: CmParameters, rng: random.Random,
                       budget: int = 64) -> tuple[Curve, tuple]:
    """(E or its twist, T) with T of exact order d.

    A point killed by the other order n + 1 + eps t means the curve has
    the wrong trace sign, so we move to the quadratic twist (once).
    """
    order = n + 1 - p.eps * p.t
    other = n + 1 + p.eps * p.t
    twisted = False
    for _ in range(budget):
        P = random_point(E, rng)
        if scalar_mul(E, order, P) is None:
            T = scalar_mul(E, p.cofactor, P)
            if T is not None and verify_exact_order(E, T, p.d):
                return E, T
            continue
        if not twisted and scalar_mul(E, other, P) is None:
            E = quadratic_twist(E, find_nonresidue(n, rng))
            twisted = True
    raise ParameterFailure("no point of exact order d found")


def choose_A_and_M(ctx, rng: random.Random, budget: int = 64, method: str | None = None) -> PeriodsRing:
    """Sample A on E' and M on E until the ring descriptor can be built."""
    A = random_point(ctx.Ep, rng)
    M = random_point(ctx.E, rng)
    for _ in range(budget):
        try:
            return PeriodsRing(ctx, A, M, method)
        except RetryA:
            A = random_point(ctx.Ep, rng)
        except RetryM:
            M = random_point(ctx.E, rng)
    raise ParameterFailure("no admissible sections A, M")


# --- certificates --------------------------------------------------------------

@dataclass(frozen=True)
class Certificate:
    n: int
    disc: int
    curve: tuple[int, int, int, int, int]
    T: tuple[int, int]
    d: int
    A: tuple[int, int]
    M: tuple[int, int]
    m: int
    criterion: str
    seed: int

    FIELDS = ("n", "disc", "curve", "T", "d", "A", "M", "m", "criterion", "seed")

    def to_dict(self) -> dict:
        def enc(v):
            if isinstance(v, tuple):
                return [str(x) for x in v]
            return v if isinstance(v, str) else str(v)
        return {k: enc(getattr(self, k)) for k in self.FIELDS}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "Certificate":
        if set(data) != set(cls.FIELDS):
            raise ValueError("certificate fields do not match")

        def num(s):
            if not isinstance(s, str) or not s.lstrip("-").isdigit():
                raise ValueError(f"not a decimal integer string: {s!r}")
            return int(s)

        def tup(v, size):
            if not isinstance(v, list) or len(v) != size:
                raise ValueError("malformed tuple field")
            return tuple(num(x) for x in v)

        if data["criterion"] not in (BASIC, STRONG):
            raise ValueError("unknown criterion")
        return cls(n=num(data["n"]), disc=num(data["disc"]), curve=tup(data["curve"], 5),
                   T=tup(data["T"], 2), d=num(data["d"]), A=tup(data["A"], 2),
                   M=tup(data["M"], 2), m=num(data["m"]), criterion=data["criterion"],
                   seed=num(data["seed"]))

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        return cls.from_dict(json.loads(text))


# --- orchestration -------------------------------------------------------------

@dataclass(frozen=True)
class ProveConfig:
    criterion: str = BASIC
    seed: int = DEFAULT_SEED
    disc_cap: int = DEFAULT_DISC_CAP
    dmax_mult: int = DEFAULT_DMAX_MULT
    table_path: str | None = None
    force_small_d: bool = False
    method: str | None = None
    # screen with Miller-Rabin and factor by rho before the elliptic machinery
    screen: bool = True
    # rebuild with T' = mT so that the recorded congruence is theta_0^n = theta_1
    literal: bool = False
    prime_d: bool = True
    torsion_budget: int = 64
    section_budget: int = 64


@dataclass
class ProofResult:
    verdict: Verdict
    certificate: Certificate | None = None
    params: CmParameters | None = None
    stages: list[str] = field(default_factory=list)


def _run_criterion(ring, n: int, config: ProveConfig):
    if config.criterion == STRONG:
        return strong_elliptic_check(ring, n, force_small_d=config.force_small_d)
    return elliptic_aks_check(ring, n)


def _precheck(n: int, config: ProveConfig) -> Verdict | None:
    if n < 2:
        raise ValueError("n must be at least 2")
    for p in primes_up_to(SMALL_PRIME_LIMIT):
        if n == p:
            return Verdict(PRIME, n, reason="small prime table")
        if n % p == 0:
            return Verdict.composite(n, p, "trial division")
    pp = is_perfect_power(n)
    if pp is not None:
        return Verdict.composite(n, pp[0], f"perfect power {pp[0]}^{pp[1]}")
    if config.screen and not is_probable_prime(n):
        f = pollard_rho(n)
        if f is not None:
            return Verdict.composite(n, f, "Pollard rho after a Miller-Rabin witness")
        return Verdict(INCONCLUSIVE, n, reason="Miller-Rabin witness but no factor found")
    return None


def prove_prime(n: int, config: ProveConfig | None = None) -> ProofResult:
    config = config or ProveConfig()
    if config.criterion not in (BASIC, STRONG):
        raise ValueError(f"unknown criterion {config.criterion!r}")
    stages: list[str] = []
    v = _precheck(n, config)
    if v is not None:
        stages.append("precheck")
        return ProofResult(v, stages=stages)
    rng = random.Random(config.seed)
    table = load_hilbert_table(config.table_path)
    if config.criterion == STRONG and not config.force_small_d:
        dmin = strong_dmin(n)
        bound = lambda d: check_bound_strong(n, d)  # noqa: E731
    else:
        dmin = compute_dmin(n)
        bound = lambda d: check_bound_basic(n, d)  # noqa: E731
    dmax = config.dmax_mult * dmin
    try:
        for params in candidate_parameters(n, dmin, dmax, config.disc_cap, rng, bound, table,
                                           config.prime_d):
            stages.append(f"disc {params.disc}: d = {params.d}")
            result = _try_parameters(n, params, table, rng, config, stages)
            if result is not None:
                return result
    except NonInvertible as exc:
        stages.append("non-invertible element")
        return ProofResult(Verdict.from_noninvertible(n, exc, "parameter search"), stages=stages)
    return ProofResult(Verdict(INCONCLUSIVE, n, reason=f"discriminants exhausted up to {config.disc_cap}"),
                       stages=stages)


def _try_parameters(n, params, table, rng, config, stages) -> ProofResult | None:
    """Full attempt for one discriminant; None means move on."""
    try:
        H = hilbert_class_poly(params.disc, table)
        j = polymod.find_root_mod_n(H, n, rng)
        E = curve_from_j(j, n)
        E, T = find_torsion_point(E, n, params, rng, config.torsion_budget)
        ctx = build_context(E, T, params.d)
        ring = choose_A_and_M(ctx, rng, config.section_budget, config.method)
        verdict, m = _run_criterion(ring, n, config)
        if verdict.kind == PENDING and config.literal and m != 1:
            T = ctx.kernel[m]
            ring = PeriodsRing(build_context(E, T, params.d), ring.A, ring.M, config.method)
            verdict, m = _run_criterion(ring, n, config)
            if verdict.kind == PENDING and m != 1:
                raise ArithmeticError("rebuilt ring does not give index 1")
    except NonInvertible as exc:
        stages.append("non-invertible element")
        return ProofResult(Verdict.from_noninvertible(n, exc, f"disc {params.disc}"), params=params,
                           stages=stages)
    except (ParameterFailure, ValueError) as exc:
        stages.append(f"disc {params.disc} abandoned: {exc}")
        return None
    if verdict.kind == BOUND_NOT_MET:  # pragma: no cover - window already filtered
        stages.append(f"disc {params.disc}: {verdict.reason}")
        return None
    if verdict.kind == CONGRUENCE_FAILED:
        return ProofResult(verdict, params=params, stages=stages)
    cert = None
    if verdict.kind == PENDING:
        verdict = finalize(verdict, n)
        cert = Certificate(n=n, disc=params.disc, curve=E.coeffs, T=T, d=params.d, A=ring.A,
                           M=ring.M, m=m, criterion=config.criterion, seed=config.seed)
    return ProofResult(verdict, certificate=cert, params=params, stages=stages)


def verify_certificate(cert: Certificate, table_path: str | None = None, replay: bool = False) -> bool:
    """Re-run the criterion from the recorded values alone.

    With ``replay`` the whole search is re-run from the recorded seed
    (default search settings) and must reproduce the certificate exactly.
    """
    try:
        ok = _verify(cert, table_path)
    except (ArithmeticError, ValueError, ParameterFailure, KeyError) as exc:
        log.debug("certificate rejected: %s", exc)
        return False
    if ok and replay:
        config = ProveConfig(criterion=cert.criterion, seed=cert.seed, table_path=table_path)
        again = prove_prime(cert.n, config).certificate
        return again is not None and again.to_json() == cert.to_json()
    return ok


def _verify(cert: Certificate, table_path: str | None) -> bool:
    n, d = cert.n, cert.d
    if n < 3 or n % 2 == 0 or d < 3 or d % 2 == 0 or not 0 < cert.m < d:
        return False
    if math.gcd(cert.m, d) != 1 or math.gcd(d, n * (n - 1) * (n + 1)) != 1:
        return False
    if any(not 0 <= c < n for c in (*cert.curve, *cert.T, *cert.A, *cert.M)):
        return False
    if cert.criterion == STRONG:
        if not check_bound_strong(n, d):
            return False
    elif not check_bound_basic(n, d):
        return False
    E = make_curve(*cert.curve, n)
    if not is_fundamental(cert.disc):
        return False
    H = hilbert_class_poly(cert.disc, load_hilbert_table(table_path))
    if polymod.evaluate(H, E.j_invariant(), n):
        return False
    if not E.contains(cert.T) or not verify_exact_order(E, cert.T, d):
        return False
    ctx = build_context(E, cert.T, d)
    verdict, m = _check(PeriodsRing(ctx, cert.A, cert.M), n, cert.criterion)
    if verdict.kind != PENDING or m != cert.m:
        return False
    if m != 1:
        # the same proof read literally: generator mT, congruence theta_0^n = theta_1
        ring = PeriodsRing(build_context(E, ctx.kernel[m], d), cert.A, cert.M)
        verdict, m = _check(ring, n, cert.criterion)
        if verdict.kind != PENDING or m != 1:
            return False
    return finalize(verdict, n).kind == PRIME


def _check(ring, n: int, criterion: str):
    if criterion == STRONG:
        return strong_elliptic_check(ring, n)
    return elliptic_aks_check(ring, n)


__all__ = [
    "BASIC", "STRONG", "Certificate", "CmParameters", "NotInTable", "ProofResult", "ProveConfig",
    "TableError", "candidate_parameters", "check_parameters", "choose_A_and_M", "compute_dmin",
    "curve_from_j", "find_cm_parameters", "find_torsion_point", "fundamental_discriminants",
    "hilbert_class_poly", "is_fundamental", "load_hilbert_table", "prove_prime", "strong_dmin",
    "verify_certificate",
]
