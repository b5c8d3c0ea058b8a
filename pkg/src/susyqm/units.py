"""Natural-unit record echoed in every report file.

All computations fix hbar = m = I = 1; the record exists so output
files state the convention explicitly.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class NaturalUnits:
    hbar: float = 1.0
    mass: float = 1.0
    inertia: float = 1.0

    def header_line(self) -> str:
        return f"units: hbar={self.hbar:g} m={self.mass:g} I={self.inertia:g}"


UNITS = NaturalUnits()
