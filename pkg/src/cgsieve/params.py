"""
Parameter planning: place a field in the (alpha, gamma) landscape, evaluate
the optimal sieve constants for its regime and choose a strategy.

Throughout, L(a, c) = exp(c (log N)^a (loglog N)^(1-a)) without the o(1),
and X = log|D| / loglog|D|.
"""

import csv
import io
import math
from dataclasses import asdict, dataclass
from fractions import Fraction

import mpmath

from .errors import DomainError, HintViolatesClassD, WrongRegime

MEDIUM, SMALL, LARGE = "Medium", "Small", "Large"
SIEVE_MEDIUM = "Sieve(Medium)"
SIEVE_SMALL = "Sieve(Small)"
SIEVE_LARGE = "Sieve(Large)"
POLY_RED = "PolyRedThenSieve"
IDEAL_RED = "IdealReduction"

DESK_SCALE_LOG = 50
HALF = Fraction(1, 2)


# -------------------------------------------------------------- L-notation


def log_L(absdisc, a, c):
    if absdisc < 16:
        raise DomainError(f"|D| = {absdisc} < 16: loglog too small for L-notation")
    if not 0 <= a <= 1 or c < 0:
        raise DomainError(f"L-notation needs 0 <= a <= 1 and c >= 0, got a={a}, c={c}")
    u = math.log(absdisc)
    v = math.log(u)
    return c * u**a * v ** (1 - a)


def eval_L(absdisc, a, c):
    """L_|D|(a, c); returned as an mpmath number once it overflows a float."""
    x = log_L(absdisc, a, c)
    if x < 700:
        return math.exp(x)
    return mpmath.exp(x)


def ceil_L(absdisc, a, c):
    return int(mpmath.ceil(mpmath.exp(log_L(absdisc, a, c))))


def big_x(absdisc):
    u = math.log(absdisc)
    return u / math.log(u)


# -------------------------------------------------------------- descriptors


@dataclass(frozen=True)
class ClassDescriptor:
    n0: float
    d0: float
    alpha: float
    gamma: float
    omega: float = 3.0
    desk_scale: bool = False

    @property
    def regime(self):
        return regime_of(self.alpha, self.gamma)


def regime_of(alpha, gamma):
    if gamma / 2 <= alpha <= 2 * gamma:
        return MEDIUM
    if 2 * alpha < gamma:
        return SMALL
    return LARGE


def satisfies_class(n, height, absdisc, desc, tol=1e-12):
    """Both inequalities defining the class D(n0, d0, alpha, gamma)."""
    X = big_x(absdisc)
    lo = X**desc.alpha / desc.n0
    hi = X**desc.alpha * desc.n0
    if not lo * (1 - tol) <= n <= hi * (1 + tol):
        return False
    if desc.gamma < 1 - desc.alpha - tol:
        return False
    u = math.log(absdisc)
    v = math.log(u)
    return math.log(height) <= desc.d0 * u**desc.gamma * v ** (1 - desc.gamma) * (1 + tol)


def classify(field, hint=None, omega=3.0):
    """
    Descriptor of a field.  Without a hint, alpha comes from the degree,
    gamma from the height with d0 = 1 (floored at 1 - alpha), and n0 is the
    smallest value (>= 1) that makes the degree window hold.
    """
    absd = max(field.abs_disc, 3)
    desk = math.log(absd) < DESK_SCALE_LOG
    if hint is not None:
        if not satisfies_class(field.n, field.height, absd, hint):
            raise HintViolatesClassD(f"field (n={field.n}, H={field.height}) is not in {hint}")
        return ClassDescriptor(hint.n0, hint.d0, hint.alpha, hint.gamma, hint.omega, desk)
    X = big_x(absd)
    alpha = min(1.0, max(0.0, math.log(field.n) / math.log(X)))
    Xa = X**alpha
    n0 = max(field.n / Xa, Xa / field.n, 1.0)
    u = math.log(absd)
    v = math.log(u)
    logH = math.log(field.height)
    gamma = 1 - alpha
    if logH > 0:
        gamma = max(gamma, math.log(logH / v) / math.log(u / v))
    return ClassDescriptor(n0=n0, d0=1.0, alpha=alpha, gamma=gamma, omega=omega, desk_scale=desk)


# ------------------------------------------------------------ regime params


@dataclass
class RegimeParams:
    regime: str
    c_b: float
    c_s: float
    c_t: float
    exponent: tuple
    B: int = None
    t: int = None
    S: int = None
    desk_scale: bool = False

    def to_json(self):
        d = asdict(self)
        d["exponent"] = list(self.exponent)
        for k in ("B", "S"):
            if d[k] is not None:
                d[k] = str(d[k])
        return d


def _w(desc, storjohann):
    # Storjohann's solver: the linear algebra exponent omega+1 becomes omega
    return desc.omega - 1 if storjohann else desc.omega


def _clamp_t(t, n):
    t = max(1, math.ceil(t))
    if n is not None:
        t = min(t, n - 1)
    return t


def medium_constants(n0, d0, a_g, w):
    """(c_s, c_b) at the optimum; a_g = alpha + gamma."""
    c_s = (2 * d0**2 * a_g * (w + 1) ** 2 / (3 * n0 * w)) ** (1 / 3)
    c_b = (4 * n0 * d0 * a_g**2 * (w + 1) / (9 * w**2)) ** (1 / 3)
    return c_s, c_b


def medium_residual(n0, d0, a_g, w, c_s, c_b):
    """3 w c_s c_b^2 - d0 (alpha+gamma)(w+1) c_b - n0 (alpha+gamma) c_s^2."""
    return 3 * w * c_s * c_b**2 - d0 * a_g * (w + 1) * c_b - n0 * a_g * c_s**2


def medium_params(desc, absdisc=None, n=None, storjohann=False):
    a, g = desc.alpha, desc.gamma
    if not g / 2 <= a <= 2 * g:
        raise WrongRegime(f"medium degree needs gamma/2 <= alpha <= 2 gamma (alpha={a}, gamma={g})")
    w = _w(desc, storjohann)
    c_s, c_b = medium_constants(desc.n0, desc.d0, a + g, w)
    c_t = (w + 1) * c_b / c_s
    p = RegimeParams(MEDIUM, c_b, c_s, c_t, ((a + g) / 3, (w + 1) * c_b), desk_scale=desc.desk_scale)
    if absdisc is not None:
        e_t = 2 * (a + g) / 3 - g
        e_s = 2 * (a + g) / 3 - a
        p.B = ceil_L(absdisc, (a + g) / 3, c_b)
        p.t = _clamp_t(c_t * big_x(absdisc) ** e_t, n)
        p.S = ceil_L(absdisc, e_s, c_s)
    return p


def small_params(desc, absdisc=None, n=None, c_t=1, storjohann=False):
    a, g = desc.alpha, desc.gamma
    if not 2 * a < g:
        raise WrongRegime(f"small degree needs 2 alpha < gamma (alpha={a}, gamma={g})")
    if c_t < 1 or int(c_t) != c_t:
        raise DomainError("c_t must be a positive integer")
    w = _w(desc, storjohann)
    c_b = (desc.d0 * g * c_t / (2 * w)) ** 0.5
    c_s = (w + 1) * c_b / (c_t + 1)
    p = RegimeParams(SMALL, c_b, c_s, c_t, (g / 2, (w + 1) * c_b), desk_scale=desc.desk_scale)
    if absdisc is not None:
        p.B = ceil_L(absdisc, g / 2, c_b)
        p.t = _clamp_t(c_t, n)
        p.S = ceil_L(absdisc, g / 2, c_s)
    return p


def large_params(desc, absdisc=None, n=None, c_s=0.1, storjohann=False):
    a, g = desc.alpha, desc.gamma
    if not a > 2 * g:
        raise WrongRegime(f"large degree needs alpha > 2 gamma (alpha={a}, gamma={g})")
    if c_s <= 0:
        raise DomainError("c_s must be positive")
    w = _w(desc, storjohann)
    c_b = (desc.n0 * a * (a + 4 * c_s) / (8 * w)) ** 0.5
    c_t = (w + 1) * c_b / c_s
    p = RegimeParams(LARGE, c_b, c_s, c_t, (a / 2, (w + 1) * c_b), desk_scale=desc.desk_scale)
    if absdisc is not None:
        p.B = ceil_L(absdisc, a / 2, c_b)
        p.t = _clamp_t(c_t * big_x(absdisc) ** (a / 2), n)
        p.S = ceil_L(absdisc, 0, c_s)
    return p


def regime_params(desc, absdisc=None, n=None, storjohann=False):
    if desc.regime == MEDIUM:
        return medium_params(desc, absdisc, n, storjohann=storjohann)
    if desc.regime == SMALL:
        return small_params(desc, absdisc, n, storjohann=storjohann)
    return large_params(desc, absdisc, n, storjohann=storjohann)


def cyclotomic_constant(omega=math.log2(7)):
    """
    Second constant of the PIP attack on prime-power cyclotomic fields:
    large-degree planner at n0 = 1, alpha = 1, c_s -> 0, with omega + 1
    replaced by omega.  Returns (c, c / log 2), the latter being the
    constant in 2^(c' sqrt(n) log n).
    """
    desc = ClassDescriptor(n0=1.0, d0=0.0, alpha=1.0, gamma=0.0, omega=omega)
    c = large_params(desc, c_s=1e-12, storjohann=True).exponent[1]
    return c, c / math.log(2)


# ---------------------------------------------------------------- strategy


@dataclass(frozen=True)
class StrategyDecision:
    action: str
    exponent: object
    rationale: str

    def to_json(self):
        return {"action": self.action, "exponent": float(self.exponent), "row": self.rationale}


def strategy(alpha, gamma_0, gamma_F=None):
    """Table of strategies; exact when the inputs are Fractions."""
    if gamma_F is None:
        gamma_F = gamma_0
    if not 0 <= alpha <= 1 or not 0 <= gamma_0 <= 2:
        raise DomainError(f"(alpha, gamma_0) = ({alpha}, {gamma_0}) outside [0,1] x [0,2]")
    if gamma_F > gamma_0 or gamma_F < 1 - alpha:
        raise DomainError(f"gamma_F = {gamma_F} must satisfy 1 - alpha <= gamma_F <= gamma_0")
    if alpha <= HALF:
        if gamma_0 <= 2 * alpha:
            return StrategyDecision(SIEVE_MEDIUM, (alpha + gamma_0) / 3, "alpha<=1/2: gamma_0<=2alpha")
        if gamma_F > 2 * alpha:
            return StrategyDecision(POLY_RED, gamma_F / 2, "alpha<=1/2: 2alpha<gamma_F<=gamma_0")
        return StrategyDecision(POLY_RED, alpha, "alpha<=1/2: gamma_F<=2alpha<gamma_0")
    if 2 * gamma_0 <= alpha:
        return StrategyDecision(SIEVE_LARGE, alpha / 2, "alpha>1/2: 2gamma_0<=alpha")
    m = max(HALF, (2 * alpha + 1) / 5)
    if (alpha + gamma_0) / 3 <= m:
        return StrategyDecision(SIEVE_MEDIUM, (alpha + gamma_0) / 3, "alpha>1/2: (alpha+gamma_0)/3<=max")
    return StrategyDecision(IDEAL_RED, m, "alpha>1/2: (alpha+gamma_0)/3>max")


def regions_grid(step=0.01, gamma_max=Fraction(6, 5)):
    """
    Rows (alpha, gamma_0, exponent, action, valid) on a grid over
    [0,1] x [0, gamma_max]; gamma_F is taken as min(gamma_0, 1).
    Points with gamma_0 < 1 - alpha are outside every class and invalid.
    """
    if not 0 < step <= 0.1:
        raise DomainError("grid step must lie in (0, 0.1]")
    h = Fraction(step).limit_denominator(10**6)
    na = int(1 / h)
    ng = int(Fraction(gamma_max) / h)
    rows = []
    for i in range(na + 1):
        a = i * h
        for j in range(ng + 1):
            g = j * h
            if g < 1 - a:
                rows.append((a, g, None, None, False))
                continue
            d = strategy(a, g, min(g, Fraction(1)))
            rows.append((a, g, d.exponent, d.action, True))
    return rows


def regions_csv(step=0.01):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["alpha", "gamma_0", "exponent", "strategy", "valid"])
    for a, g, e, s, ok in regions_grid(step):
        w.writerow([f"{float(a):.6g}", f"{float(g):.6g}",
                    "" if e is None else f"{float(e):.6f}", s or "", int(ok)])
    return buf.getvalue()


# ---------------------------------------------------------------- desk scale


@dataclass
class DeskPlan:
    B: int
    t: int
    S: int
    adaptive: bool
    source: str

    def to_json(self):
        return asdict(self)


DESK_B_MIN = 30
DESK_S_START = 8


def desk_scale_plan(field, desc=None):
    """
    Concrete (B, t, S).  The regime formulas are used verbatim when they give
    a factor base bound in [30, 10^6]; otherwise an adaptive plan starts at
    B = max(30, ceil(log^2 |D|)), t = min(n-1, 2), S = 8 (doubled as needed).
    """
    absd = field.abs_disc
    if absd >= 16:
        desc = desc or classify(field)
        p = regime_params(desc, absd, field.n)
        if DESK_B_MIN <= p.B <= 10**6:
            return DeskPlan(B=p.B, t=p.t, S=p.S, adaptive=False, source=f"formulas ({p.regime})")
    B = max(DESK_B_MIN, math.ceil(math.log(absd) ** 2))
    return DeskPlan(B=B, t=min(field.n - 1, 2), S=DESK_S_START, adaptive=True, source="adaptive")
