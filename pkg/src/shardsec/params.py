"""Network parameter vector and its validation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping, Optional, Union

PRIMARY_FIELDS = ("N", "K", "M", "M_sel", "n", "r", "R", "N_s")
INTEGER_FIELDS = ("N", "K", "M", "M_sel", "n", "N_s")
FRACTION_FIELDS = ("r", "R")


class ParamError(ValueError):
    """A parameter vector violates a named invariant.

    ``invariant`` is a short stable name (``"M_sel exceeds M"`` etc.) so
    callers can tell configuration mistakes apart from formula bugs.
    """

    def __init__(self, invariant: str, detail: str = ""):
        self.invariant = invariant
        self.detail = detail
        super().__init__(f"{invariant}: {detail}" if detail else invariant)


def as_fraction(value: Union[str, int, float, Fraction]) -> Fraction:
    """Interpret a resiliency as an exact rational.

    Decimal text is taken literally (``"0.333"`` is 333/1000, not 1/3).
    Floats go through their shortest repr for the same reason.
    """
    if isinstance(value, bool):
        raise TypeError("resiliency cannot be a boolean")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite resiliency {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


@dataclass(frozen=True)
class NetworkParams:
    """Validated protocol parameters.

    N       honest nodes in the network
    K       IDs admitted to the ID Selection Pool
    M       Sybil IDs in the ID Pool
    M_sel   Sybil IDs that reach the ID Selection Pool
    n       committee size
    r       committee resiliency (exact rational)
    R       ID Selection Pool resiliency (exact rational)
    N_s     sharding rounds per year

    Construction validates every invariant; derived quantities are
    properties of the primaries and never stored independently.
    """

    N: int
    K: int
    M: int
    M_sel: int
    n: int
    r: Fraction
    R: Fraction
    N_s: int
    label: Optional[str] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        _check(self)

    @property
    def pool_size(self) -> int:
        """Size of the ID Pool: N - 1 + M."""
        return self.N - 1 + self.M

    @property
    def committees(self) -> int:
        return self.K // self.n

    @property
    def capacity(self) -> int:
        """Sybil IDs a single committee tolerates (floor(n*r))."""
        return math.floor(self.n * self.r)

    @property
    def committee_slots(self) -> int:
        return self.committees * self.n

    @property
    def remainder(self) -> int:
        """Selection-pool IDs left unassigned when n does not divide K."""
        return self.K - self.committee_slots

    def replace(self, **changes: Any) -> "NetworkParams":
        return validate({**self.as_dict(), **changes})

    def as_dict(self) -> dict:
        d = {name: getattr(self, name) for name in PRIMARY_FIELDS}
        if self.label is not None:
            d["label"] = self.label
        return d

    def to_json_dict(self) -> dict:
        """Primaries plus derived values, rationals as text."""
        d = {}
        for name in PRIMARY_FIELDS:
            v = getattr(self, name)
            d[name] = _fraction_text(v) if name in FRACTION_FIELDS else v
        d["Lambda"] = self.pool_size
        d["lambda"] = self.committees
        d["capacity"] = self.capacity
        if self.label is not None:
            d["label"] = self.label
        return d


def _fraction_text(x: Fraction) -> str:
    # prefer terminating decimal text when exact
    den = x.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{x.numerator}/{x.denominator}"
    places = max(twos, fives)
    if places == 0:
        return str(x.numerator)
    scaled = x * 10**places
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(int(scaled)), 10**places)
    return f"{sign}{whole}.{frac:0{places}d}"


def _check(p: NetworkParams) -> None:
    for name in INTEGER_FIELDS:
        v = getattr(p, name)
        if isinstance(v, bool) or not isinstance(v, int):
            raise ParamError(f"{name} must be an integer", f"{name}={v!r}")
    for name in FRACTION_FIELDS:
        if not isinstance(getattr(p, name), Fraction):
            raise ParamError(f"{name} must be rational", f"{name}={getattr(p, name)!r}")
    for name in ("N", "K", "M", "M_sel"):
        if getattr(p, name) < 0:
            raise ParamError(f"{name} is negative", f"{name}={getattr(p, name)}")
    if p.N < 1:
        raise ParamError("N must be >= 1", f"N={p.N}")
    if p.n < 1:
        raise ParamError("n must be >= 1", f"n={p.n}")
    if p.N_s < 1:
        raise ParamError("N_s must be >= 1", f"N_s={p.N_s}")
    if not 0 < p.r < 1:
        raise ParamError("r outside (0,1)", f"r={p.r}")
    if not 0 < p.R < 1:
        raise ParamError("R outside (0,1)", f"R={p.R}")
    if p.M_sel > p.M:
        raise ParamError("M_sel exceeds M", f"M_sel={p.M_sel}, M={p.M}")
    if p.K > p.pool_size:
        raise ParamError("K exceeds Lambda", f"K={p.K}, Lambda=N-1+M={p.pool_size}")
    if p.M_sel > p.K:
        raise ParamError("M_sel exceeds K", f"M_sel={p.M_sel}, K={p.K}")
    if p.K < p.n:
        raise ParamError("K smaller than n", f"K={p.K}, n={p.n} gives no committee")


def validate(raw: Union[Mapping[str, Any], NetworkParams]) -> NetworkParams:
    """Coerce a raw mapping (e.g. parsed JSON) into :class:`NetworkParams`.

    Any ``Lambda``/``lambda`` keys in the input are ignored; both are
    always recomputed from the primaries.
    """
    if isinstance(raw, NetworkParams):
        raw = raw.as_dict()
    missing = [name for name in PRIMARY_FIELDS if name not in raw]
    if missing:
        raise ParamError("missing field", ", ".join(missing))
    values: dict[str, Any] = {}
    for name in INTEGER_FIELDS:
        values[name] = _as_int(name, raw[name])
    for name in FRACTION_FIELDS:
        try:
            values[name] = as_fraction(raw[name])
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise ParamError(f"{name} must be rational", str(exc)) from None
    label = raw.get("label")
    return NetworkParams(label=None if label is None else str(label), **values)


def _as_int(name: str, v: Any) -> int:
    if isinstance(v, bool):
        raise ParamError(f"{name} must be an integer", f"{name}={v!r}")
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    if isinstance(v, float) and v.is_integer():
        return int(v)
    if isinstance(v, str):
        try:
            return int(v.strip())
        except ValueError:
            pass
    raise ParamError(f"{name} must be an integer", f"{name}={v!r}")

