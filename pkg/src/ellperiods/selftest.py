"""Quick versions of the acceptance checks, for ``ellperiods selftest``.

Each check takes at most a few seconds; the full-size runs live in the
test suite.
"""

from __future__ import annotations

from fractions import Fraction

from . import cm
from .criteria import (PENDING, PRIME, PRIME_POWER, berrizbeitia_check, check_bound_strong,
                       finalize, find_berrizbeitia_alpha)
from .fixtures import DEMOS
from .lattice import (count_Sd, count_Sd_dp, count_Sd_exhaustive, log_count_lower,
                      unit_lattice_det)


def _demo(name):
    return all(r.ok for r in DEMOS[name]())


def _soundness():
    composites = [561, 1105, 1729, 10201, 1009 * 1013, 9991]
    return all(cm.prove_prime(n).verdict.kind not in (PRIME, PRIME_POWER) for n in composites)


def _round_trip():
    result = cm.prove_prime(1009)
    cert = result.certificate
    if cert is None or not cm.verify_certificate(cert):
        return False
    tampered = cm.Certificate.from_dict({**cert.to_dict(), "m": str(cert.m % (cert.d - 1) + 1)})
    return not cm.verify_certificate(tampered)


def _berrizbeitia():
    alpha = find_berrizbeitia_alpha(727, 121)
    v = berrizbeitia_check(727, 121, alpha)
    return (v.kind == PENDING and finalize(v, 727).kind == PRIME
            and all(finalize(berrizbeitia_check(15, 7, a), 15).kind not in (PRIME, PRIME_POWER)
                    for a in range(2, 15)))


def _lattice():
    return (all(unit_lattice_det(d) == d for d in range(3, 40, 2))
            and all(count_Sd_dp(d) == count_Sd_exhaustive(d) == count_Sd(d) for d in (3, 5, 7))
            and log_count_lower(count_Sd(2001)) >= Fraction(174498, 100000) * 2001)


def _strong_bound():
    return not check_bound_strong(2**32, 1999) and check_bound_strong(2**32, 2001)


CHECKS = [
    ("F_7 example", lambda: _demo("f7")),
    ("Z/101^2 example", lambda: _demo("z101sq")),
    ("n = 1009 example", lambda: _demo("n1009")),
    ("composites are never certified", _soundness),
    ("certificate round trip and tamper", _round_trip),
    ("Berrizbeitia 727 / 15", _berrizbeitia),
    ("lattice counts", _lattice),
    ("strong bound threshold", _strong_bound),
]


def run_all() -> list[tuple[str, bool]]:
    out = []
    for name, fn in CHECKS:
        try:
            ok = bool(fn())
        except Exception:  # a crash is a failed check here
            ok = False
        out.append((name, ok))
    return out
