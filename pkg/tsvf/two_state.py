from dataclasses import dataclass
from typing import Dict, Tuple

from optics.elements import ElementKind
from optics.network import OpticalNetwork

Port = Tuple[str, str]


@dataclass(frozen=True)
class TwoStateVector:
    """Forward and backward evolving amplitudes at every mirror.

    ``forward[X]`` sums all partial paths source->X including X's own factor,
    ``backward[X]`` sums all partial paths X->detector after X, so that
    ``forward[X] * backward[X]`` is the summed amplitude of the full paths through X.
    """

    forward: Dict[str, complex]
    backward: Dict[str, complex]
    overlap: complex

    def product(self, mirror: str) -> complex:
        return self.forward[mirror] * self.backward[mirror]


def two_state_vector(network: OpticalNetwork) -> TwoStateVector:
    """Propagate the preselected state forward and the postselected state backward.

    Both directions use the same element factors; no conjugation is applied.

    Args:
        network: A validated network

    Returns:
        The two-state vector at the mirrors and the overlap <Phi|Psi>
    """
    order = network.topological_order()
    source = network.source
    detector = network.detector

    arriving: Dict[Port, complex] = {}
    leaving: Dict[Port, complex] = {}
    for element_id in order:
        element = network.element(element_id)
        inputs = {None: 1.0 + 0j} if element.kind is ElementKind.SOURCE else {
            port: arriving.get((element_id, port), 0j) for port in element.input_ports
        }
        for out_port in element.output_ports:
            leaving[(element_id, out_port)] = sum(
                amplitude * element.transfer(in_port, out_port) for in_port, amplitude in inputs.items()
            )
        for conn in network.outgoing(element_id):
            key = (conn.target, conn.target_port)
            arriving[key] = arriving.get(key, 0j) + leaving[(element_id, conn.source_port)]

    to_detector: Dict[Port, complex] = {(detector.id, "in"): 1.0 + 0j}
    after: Dict[Port, complex] = {}
    for element_id in reversed(order):
        element = network.element(element_id)
        for conn in network.outgoing(element_id):
            after[(element_id, conn.source_port)] = to_detector.get((conn.target, conn.target_port), 0j)
        if element.kind is ElementKind.DETECTOR:
            continue
        in_ports = (None,) if element.kind is ElementKind.SOURCE else element.input_ports
        for in_port in in_ports:
            to_detector[(element_id, in_port)] = sum(
                element.transfer(in_port, out_port) * after.get((element_id, out_port), 0j)
                for out_port in element.output_ports
            )

    forward = {m.id: leaving[(m.id, "out")] for m in network.mirrors}
    backward = {m.id: after.get((m.id, "out"), 0j) for m in network.mirrors}
    overlap = to_detector.get((source.id, None), 0j)

    return TwoStateVector(forward=forward, backward=backward, overlap=overlap)
