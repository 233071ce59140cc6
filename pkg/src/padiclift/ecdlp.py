"""Discrete-log recovery over Q through logarithms modulo growing powers of p.

Given Q = h*P on a curve over Q with good reduction at a small odd prime p,
write h = h_bar + n*t where t is the order of P mod p and h_bar the residual
discrete log in E(F_p). Both t*P and Q - h_bar*P land in the kernel of
reduction, so their reductions mod p**k have logarithms p^c*l1 and p^d*l2,
and n satisfies p^c * n * l1 = p^d * l2 (mod p**k), pinning n modulo
p^(k - c). Increasing k grows the known prefix of n until the candidate
h = h_bar + n*t reproduces Q exactly over Q, which is the only accepted
stopping condition.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .arith import format_rational, require_odd_prime
from .curve import (
    ProjPointQ,
    ShortWeierstrass,
    curve_to_dict,
    ec_add,
    ec_neg,
    ec_scalar_mul,
    fp_group_order,
    fp_point_order,
    good_reduction,
    qmod_k,
)
from .errors import AttackError, HypothesisError
from .logmap import log_map

DEFAULT_K_MAX = 40


@dataclass(frozen=True)
class AttackParams:
    curve: ShortWeierstrass
    P: ProjPointQ
    Q: ProjPointQ
    p: int
    k_max: int = DEFAULT_K_MAX
    stabilization_window: int = 2

    def __post_init__(self):
        require_odd_prime(self.p)
        if not good_reduction(self.curve, self.p):
            raise HypothesisError(f"{self.curve} does not have good reduction at {self.p}")
        for pt in (self.P, self.Q):
            if not pt.on_curve(self.curve):
                raise ValueError(f"point {pt!r} is not on the curve")


@dataclass(frozen=True)
class AttackRow:
    """One refinement step at working modulus p**k.

    log_tp and log_qhp are the raw logarithm residues in [0, p**k).
    (c, l1) decompose the t*P logarithm as p^c * l1 with l1 a unit, using
    the convention that the zero residue stands for the class p^k (so
    c = k, l1 = 1); (d, l2) decompose the other side with the plain zero
    sentinel l2 = 0. n is the solved prefix modulo p**n_precision, and
    h_candidate = h_bar + n*t (absent while l1 carries no information).
    """

    k: int
    log_tp: int
    c: int
    l1: int
    log_qhp: int
    d: int
    l2: int
    n_precision: int
    n: int | None
    h_candidate: int | None


@dataclass
class AttackTranscript:
    t: int
    h_bar: int
    p: int
    rows: list[AttackRow] = field(default_factory=list)
    h: int | None = None
    stabilization_index: int | None = None

    def table_rows(self) -> list[tuple[str, ...]]:
        """Rows in the display convention: the t*P log shows the zero class as p^k."""
        out = []
        for r in self.rows:
            log_tp_shown = r.log_tp if r.log_tp != 0 else self.p**r.k
            out.append(
                (
                    str(r.k),
                    str(log_tp_shown),
                    str(r.l1),
                    str(r.log_qhp),
                    str(r.l2),
                    "-" if r.n is None else str(r.n),
                    "-" if r.h_candidate is None else str(r.h_candidate),
                )
            )
        return out


def _decompose(residue: int, p: int, k: int) -> tuple[int, int]:
    """residue = p^c * unit, with the zero class read as the representative p^k."""
    if residue == 0:
        return k, 1
    c = 0
    while residue % p == 0:
        residue //= p
        c += 1
    return c, residue


def residual_dlp_fp(
    P: ProjPointQ, Q: ProjPointQ, curve: ShortWeierstrass, p: int
) -> tuple[int, int]:
    """(t, h_bar): the order of P mod p and the discrete log of Q mod p, by brute force."""
    require_odd_prime(p)
    Pbar = qmod_k(P, p, 1)
    Qbar = qmod_k(Q, p, 1)
    t = fp_point_order(Pbar, curve, p)
    if t <= 2:
        raise HypothesisError(f"order of P mod {p} is {t}; the method needs t > 2")
    acc = ProjPointQ.infinity()
    for h in range(t):
        if qmod_k(acc, p, 1) == Qbar:
            return t, h
        acc = ec_add(acc, P, curve)
    raise HypothesisError(f"Q is not a multiple of P modulo {p}")


def attack_step(
    k: int, params: AttackParams, t: int, h_bar: int
) -> AttackRow:
    """One row at working modulus p**k.

    Solves n = p^(d-c) * l2 / l1 modulo p^(k-c) when that precision is
    positive. l1 without information (t*P log vanishing at this precision)
    yields an n-less row: the caller should increase k. d < c with a
    nonzero l2 cannot happen when Q really is a multiple of P and is
    reported as an inconsistency.
    """
    p = params.p
    R1 = ec_scalar_mul(t, params.P, params.curve)
    R2 = ec_add(params.Q, ec_scalar_mul(-h_bar, params.P, params.curve), params.curve)
    log1 = log_map(qmod_k(R1, p, k), params.curve).z
    log2 = log_map(qmod_k(R2, p, k), params.curve).z
    c, l1 = _decompose(log1, p, k)
    if log2 == 0:
        d, l2 = k, 0
    else:
        d, l2 = _decompose(log2, p, k)
    n_precision = max(0, k - c)
    if log1 == 0 and k >= 2 and log2 != 0:
        # no usable information about n at this precision
        return AttackRow(k, log1, c, l1, log2, d, l2, 0, None, None)
    if l2 == 0:
        n = 0
    else:
        if d < c:
            raise AttackError(
                f"inconsistent logarithm valuations at k={k}: d={d} < c={c}; "
                "Q does not look like a multiple of P"
            )
        modulus = p**n_precision
        n = 0 if n_precision == 0 else p ** (d - c) * l2 * pow(l1, -1, modulus) % modulus
    return AttackRow(k, log1, c, l1, log2, d, l2, n_precision, n, h_bar + n * t)


def _stabilization_index(rows: list[AttackRow], n_final: int) -> int:
    stab = rows[-1].k
    for row in reversed(rows):
        if row.n != n_final:
            break
        stab = row.k
    return stab


def run_attack(params: AttackParams) -> tuple[int, AttackTranscript]:
    """Iterate attack_step for k = 1, 2, ... until h reproduces Q exactly over Q."""
    p = params.p
    t, h_bar = residual_dlp_fp(params.P, params.Q, params.curve, p)
    transcript = AttackTranscript(t=t, h_bar=h_bar, p=p)
    checked: set[int] = set()
    for k in range(1, params.k_max + 1):
        row = attack_step(k, params, t, h_bar)
        transcript.rows.append(row)
        if row.h_candidate is None or row.h_candidate in checked:
            continue
        checked.add(row.h_candidate)
        if ec_scalar_mul(row.h_candidate, params.P, params.curve) == params.Q:
            h = row.h_candidate
            transcript.h = h
            stab = _stabilization_index(transcript.rows, row.n)
            transcript.stabilization_index = stab
            bound = _ceil_log(p, h) + params.stabilization_window
            if stab > bound:
                raise AttackError(
                    f"stabilization index {stab} exceeds ceil(log_{p}({h})) + "
                    f"{params.stabilization_window} = {bound}"
                )
            return h, transcript
    raise AttackError(f"no h found with k up to {params.k_max}")


def _ceil_log(p: int, h: int) -> int:
    if h <= 1:
        return 0
    e, pw = 0, 1
    while pw < h:
        pw *= p
        e += 1
    return e


def transcript_to_tsv(transcript: AttackTranscript) -> str:
    """The seven-column table: k, Log(t*P), l1, Log(Q - h_bar*P), l2, n, h."""
    lines = ["k\tlog_tP\tl1\tlog_QhP\tl2\tn\th"]
    for row in transcript.table_rows():
        lines.append("\t".join(row))
    return "\n".join(lines) + "\n"


def transcript_to_dict(transcript: AttackTranscript, params: AttackParams) -> dict:
    """JSON-ready transcript; every number is a decimal string."""
    return {
        "curve": curve_to_dict(params.curve),
        "p": str(params.p),
        "t": str(transcript.t),
        "h_bar": str(transcript.h_bar),
        "h": None if transcript.h is None else str(transcript.h),
        "stabilization_index": (
            None if transcript.stabilization_index is None else str(transcript.stabilization_index)
        ),
        "rows": [
            {
                "k": str(r.k),
                "log_tP": str(r.log_tp),
                "c": str(r.c),
                "l1": str(r.l1),
                "log_QhP": str(r.log_qhp),
                "d": str(r.d),
                "l2": str(r.l2),
                "n_precision": str(r.n_precision),
                "n": None if r.n is None else str(r.n),
                "h_candidate": None if r.h_candidate is None else str(r.h_candidate),
            }
            for r in transcript.rows
        ],
    }


@dataclass(frozen=True)
class GeneralizedDemoReport:
    """The two reduction arrows from E(Q) and the residual log they produce."""

    q: int
    p: int
    b: int
    order_mod_q: int
    a: int
    p_side: tuple[str, str]
    q_side: tuple[str, str]

    def __str__(self) -> str:
        lines = [
            f"E(Q) --mod {self.q}--> E(F_{self.q}): P -> {self.q_side[0]}, Q -> {self.q_side[1]}",
            f"E(Q) --mod {self.p}--> E(F_{self.p}): P -> {self.p_side[0]}, Q -> {self.p_side[1]}",
            f"recovered b = {self.b} over Q; ord(P mod {self.q}) = {self.order_mod_q}",
            f"a = b mod ord = {self.a}",
        ]
        return "\n".join(lines)


def generalized_demo(
    curve: ShortWeierstrass,
    P: ProjPointQ,
    Q: ProjPointQ,
    q: int,
    p: int,
    *,
    order: int | None = None,
    k_max: int = DEFAULT_K_MAX,
) -> tuple[int, GeneralizedDemoReport]:
    """Recover the F_q discrete log of Q from the rational lift, via the small prime p.

    The relationship Q = b*P over Q survives reduction mod q, so running the
    p-side recovery and reducing b modulo ord(P mod q) answers the q-side
    question. For q beyond the enumeration ceiling the caller must supply
    the order.
    """
    require_odd_prime(q)
    if not good_reduction(curve, q):
        raise HypothesisError(f"{curve} does not have good reduction at {q}")
    b, _ = run_attack(AttackParams(curve=curve, P=P, Q=Q, p=p, k_max=k_max))
    if order is None:
        from .curve import FP_ENUM_CEILING

        if q > FP_ENUM_CEILING:
            raise AttackError(
                f"ord required: q = {q} exceeds the enumeration ceiling; pass order=..."
            )
        order = fp_point_order(qmod_k(P, q, 1), curve, q)
    a = b % order
    report = GeneralizedDemoReport(
        q=q,
        p=p,
        b=b,
        order_mod_q=order,
        a=a,
        p_side=(repr(qmod_k(P, p, 1)), repr(qmod_k(Q, p, 1))),
        q_side=(repr(qmod_k(P, q, 1)), repr(qmod_k(Q, q, 1))),
    )
    return a, report
