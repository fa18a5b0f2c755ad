"""Job configuration and the key=value seed file format."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import sympy

from .curve import Curve, IntegralPoint, validate_point
from .presets import PRESETS
from .sequence import DEFAULT_EXACT_CAP, SequenceSeed, seed_from_table

SEED_KEYS = ("x", "c4", "c5", "c6", "c7", "c8", "c9")


class ConfigError(ValueError):
    pass


def parse_seed_text(text: str, source: str = "<seed>") -> dict[str, int]:
    """Parse ``key=value`` lines (x, c4..c9); blank lines and ``#`` comments are skipped."""
    values: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if not sep:
            raise ConfigError(f"{source}:{lineno}: expected key=value, got {raw!r}")
        if key not in SEED_KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        try:
            values[key] = int(val)
        except ValueError:
            raise ConfigError(f"{source}:{lineno}: {key} is not a decimal integer: {val!r}") from None
    missing = [k for k in SEED_KEYS if k not in values]
    if missing:
        raise ConfigError(f"{source}: missing keys {', '.join(missing)}")
    return values


def format_seed_text(seed: SequenceSeed) -> str:
    lines = [f"x={seed.x_P}"] + [f"c{i}={seed.c[i]}" for i in range(4, 10)]
    return "\n".join(lines) + "\n"


def _int_list(text: str, n: int, what: str) -> list[int]:
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != n:
        raise ConfigError(f"{what}: expected {n} comma-separated integers, got {text!r}")
    try:
        return [int(s) for s in parts]
    except ValueError:
        raise ConfigError(f"{what}: not all integers: {text!r}") from None


@dataclass
class JobConfig:
    curve: Curve
    point: IntegralPoint
    seed: SequenceSeed
    primes: list[int] = field(default_factory=list)
    mode: str = "strict"
    fmt: str = "table"
    cap_exact: int = DEFAULT_EXACT_CAP
    cap_brute: int | None = None
    jobs: int = 1

    @classmethod
    def build(cls, *, preset: str | None = None, curve: str | None = None,
              point: str | None = None, seed_file: str | None = None, **rest) -> JobConfig:
        if preset is not None:
            if curve or point or seed_file:
                raise ConfigError("--preset cannot be combined with --curve/--point/--seed-file")
            try:
                c, pt, seed = PRESETS[preset.lower()]
            except KeyError:
                raise ConfigError(f"unknown preset {preset!r}; known: {', '.join(PRESETS)}") from None
            return cls(c, pt, seed, **rest)
        if not (curve and point and seed_file):
            raise ConfigError("give --preset, or all of --curve, --point and --seed-file")
        c = Curve(*_int_list(curve, 5, "--curve"))
        pt = IntegralPoint(*_int_list(point, 2, "--point"))
        if not validate_point(c, pt):
            raise ConfigError(f"point {pt.x},{pt.y} is not on the curve")
        vals = parse_seed_text(Path(seed_file).read_text(encoding="utf-8"), seed_file)
        if vals["x"] != pt.x:
            raise ConfigError(f"{seed_file}: x={vals['x']} does not match the point")
        seed = seed_from_table(vals["x"], [vals[f"c{i}"] for i in range(4, 10)], c)
        return cls(c, pt, seed, **rest)


def select_primes(prime: int | None = None, primes: str | None = None,
                  pmax: int | None = None) -> list[int]:
    given = [x is not None for x in (prime, primes, pmax)]
    if sum(given) != 1:
        raise ConfigError("give exactly one of --prime, --primes, --pmax")
    if pmax is not None:
        return list(sympy.primerange(2, pmax + 1))
    if prime is not None:
        out = [prime]
    else:
        try:
            out = [int(s) for s in primes.split(",") if s.strip()]
        except ValueError:
            raise ConfigError(f"--primes: not all integers: {primes!r}") from None
    bad = [q for q in out if not sympy.isprime(q)]
    if bad:
        raise ConfigError(f"not prime: {', '.join(map(str, bad))}")
    return sorted(set(out))
