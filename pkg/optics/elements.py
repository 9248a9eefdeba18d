import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from beam.vibration import VibrationSpec


class ElementKind(str, Enum):
    SOURCE = "source"
    BEAM_SPLITTER = "beam_splitter"
    MIRROR = "mirror"
    BLOCK = "block"
    DETECTOR = "detector"


INPUT_PORTS = {
    ElementKind.SOURCE: (),
    ElementKind.BEAM_SPLITTER: ("a", "b"),
    ElementKind.MIRROR: ("in",),
    ElementKind.BLOCK: ("in",),
    ElementKind.DETECTOR: ("in",),
}

OUTPUT_PORTS = {
    ElementKind.SOURCE: ("out",),
    ElementKind.BEAM_SPLITTER: ("t", "r"),
    ElementKind.MIRROR: ("out",),
    ElementKind.BLOCK: ("out",),
    ElementKind.DETECTOR: (),
}

# (input, output) pairs that go straight through a splitter; the other two reflect.
_TRANSMITTING = {("a", "t"), ("b", "r")}


@dataclass(frozen=True)
class Element:
    """One optical element of a network.

    Only the fields relevant to ``kind`` are meaningful: ``reflect_fraction`` for
    beam splitters, ``static_phase`` and ``vibration`` for mirrors.
    """

    id: str
    kind: ElementKind
    reflect_fraction: float = 0.5
    static_phase: float = 0.0
    vibration: Optional[VibrationSpec] = None

    @classmethod
    def source(cls, id: str = "S") -> "Element":
        return cls(id=id, kind=ElementKind.SOURCE)

    @classmethod
    def detector(cls, id: str = "D") -> "Element":
        return cls(id=id, kind=ElementKind.DETECTOR)

    @classmethod
    def block(cls, id: str) -> "Element":
        return cls(id=id, kind=ElementKind.BLOCK)

    @classmethod
    def beam_splitter(cls, id: str, reflect_fraction: float = 0.5) -> "Element":
        return cls(id=id, kind=ElementKind.BEAM_SPLITTER, reflect_fraction=reflect_fraction)

    @classmethod
    def mirror(
        cls,
        id: str,
        static_phase: float = 0.0,
        vibration: Optional[VibrationSpec] = None,
    ) -> "Element":
        return cls(id=id, kind=ElementKind.MIRROR, static_phase=static_phase, vibration=vibration)

    @property
    def input_ports(self) -> Tuple[str, ...]:
        return INPUT_PORTS[self.kind]

    @property
    def output_ports(self) -> Tuple[str, ...]:
        return OUTPUT_PORTS[self.kind]

    @property
    def is_mirror(self) -> bool:
        return self.kind is ElementKind.MIRROR

    def transfer(self, in_port: Optional[str], out_port: str) -> complex:
        """Complex amplitude factor for light entering ``in_port`` and leaving ``out_port``.

        Splitters transmit with √(1−r) and reflect with i√r; a mirror contributes
        only its static phase; a block absorbs everything.

        Args:
            in_port: Input port name (None for the source)
            out_port: Output port name

        Returns:
            Amplitude factor
        """
        if self.kind is ElementKind.SOURCE:
            return 1.0 + 0j
        if self.kind is ElementKind.BLOCK:
            return 0j
        if self.kind is ElementKind.MIRROR:
            return cmath.exp(1j * self.static_phase)
        if self.kind is ElementKind.BEAM_SPLITTER:
            r = self.reflect_fraction
            if (in_port, out_port) in _TRANSMITTING:
                return complex(math.sqrt(1.0 - r), 0.0)
            return complex(0.0, math.sqrt(r))
        raise ValueError(f"Element '{self.id}' has no outputs")
