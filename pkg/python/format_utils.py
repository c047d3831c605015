from decimal import ROUND_HALF_UP, Decimal
import math


def round_half_away(value: float, digits: int = 3) -> float:
    if not math.isfinite(value):
        return value
    quantum = Decimal(1).scaleb(-digits)
    return float(Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_UP))


def fmt_fixed(value: float, digits: int = 6) -> str:
    if not math.isfinite(value):
        return str(value)
    rounded = round_half_away(value, digits)
    if rounded == 0.0:
        rounded = 0.0
    return f"{rounded:.{digits}f}"


def fmt_interval(lower: float, upper: float, digits: int = 3) -> str:
    return f"[{fmt_fixed(lower, digits)}, {fmt_fixed(upper, digits)}]"


def fmt_csv_float(value: float) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, int):
        return str(value)
    if value is None:
        return ""
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return format(value, ".12g")
