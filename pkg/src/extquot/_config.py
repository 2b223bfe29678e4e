import os

DEFAULT_TOLERANCE = 1e-9


def default_tolerance() -> float:
    """Tolerance for torus point comparison; ``EXTQUOT_TOLERANCE`` overrides."""
    raw = os.environ.get("EXTQUOT_TOLERANCE")
    if raw is None or raw.strip() == "":
        return DEFAULT_TOLERANCE
    value = float(raw)
    if not value > 0:
        raise ValueError(f"EXTQUOT_TOLERANCE must be positive, got {raw!r}")
    return value


def close(a: complex, b: complex, tol: float) -> bool:
    # scale-aware: inversion-heavy monomials produce large and small moduli
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))
