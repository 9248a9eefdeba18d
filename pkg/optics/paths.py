from dataclasses import dataclass, replace
from typing import Iterable, List, Optional, Sequence, Tuple

from optics.elements import ElementKind
from optics.network import Connection, OpticalNetwork, TopologyError


@dataclass(frozen=True)
class OpticalPath:
    """One source->detector route.

    For paths enumerated from a network, ``element_sequence`` lists every element
    and ``connections`` the connection ids between them. Pinned path tables carry
    only the mirrors, so there both sequences are the mirror list.
    """

    element_sequence: Tuple[str, ...]
    amplitude: complex
    mirrors: Tuple[str, ...]
    connections: Tuple[str, ...] = ()

    @classmethod
    def from_mirrors(cls, amplitude: complex, mirrors: Iterable[str]) -> "OpticalPath":
        mirrors = tuple(mirrors)
        return cls(element_sequence=mirrors, amplitude=complex(amplitude), mirrors=mirrors)

    def passes(self, mirror: str) -> bool:
        return mirror in self.mirrors

    def scaled(self, factor: complex) -> "OpticalPath":
        return replace(self, amplitude=self.amplitude * factor)


def enumerate_paths(network: OpticalNetwork) -> List[OpticalPath]:
    """List every source->detector route that carries light.

    Routes through a Block are dropped. The result is sorted by element sequence.

    Args:
        network: A network that passes validate

    Returns:
        Paths with their amplitudes and mirror lists

    Raises:
        TopologyError: If the graph has a cycle
    """
    cycle = network.find_cycle()
    if cycle:
        raise TopologyError(f"Network has a cycle: {' -> '.join(cycle)}")

    source = network.source
    routes: List[Tuple[Connection, ...]] = []

    def walk(element_id: str, route: Tuple[Connection, ...]) -> None:
        element = network.element(element_id)
        if element.kind is ElementKind.DETECTOR:
            routes.append(route)
            return
        if element.kind is ElementKind.BLOCK:
            return
        for conn in network.outgoing(element_id):
            walk(conn.target, route + (conn,))

    walk(source.id, ())

    paths = [_path_from_route(network, source.id, route) for route in routes]
    return sorted(paths, key=lambda p: (p.element_sequence, p.connections))


def _path_from_route(network: OpticalNetwork, start: str, route: Sequence[Connection]) -> OpticalPath:
    sequence = (start,) + tuple(conn.target for conn in route)
    mirrors = tuple(e for e in sequence if network.element(e).is_mirror)
    path = OpticalPath(
        element_sequence=sequence,
        amplitude=0j,
        mirrors=mirrors,
        connections=tuple(conn.id for conn in route),
    )
    return replace(path, amplitude=path_amplitude(path, network))


def path_amplitude(path: OpticalPath, network: OpticalNetwork) -> complex:
    """Product of the element factors along a path.

    Args:
        path: Path through ``network``
        network: The network the path belongs to

    Returns:
        Complex amplitude of the route
    """
    route = _resolve_route(path, network)
    amplitude = 1.0 + 0j
    in_port: Optional[str] = None
    for element_id, conn in zip(path.element_sequence, route):
        amplitude *= network.element(element_id).transfer(in_port, conn.source_port)
        in_port = conn.target_port
    return amplitude


def _resolve_route(path: OpticalPath, network: OpticalNetwork) -> List[Connection]:
    if path.connections:
        return [network.connection(conn_id) for conn_id in path.connections]

    route = []
    for source, target in zip(path.element_sequence, path.element_sequence[1:]):
        candidates = [c for c in network.outgoing(source) if c.target == target]
        if len(candidates) != 1:
            raise KeyError(f"Cannot resolve a unique connection {source}->{target}")
        route.append(candidates[0])
    return route
