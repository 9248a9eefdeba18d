from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Dict, Iterator, List, Optional, Set, Tuple, Union

from beam.vibration import VibrationSpec
from optics.elements import Element, ElementKind


class TopologyError(ValueError):
    """Raised when a network graph cannot be traversed (e.g. it has a cycle)."""


@dataclass(frozen=True)
class Connection:
    """Directed link from an output port of one element to an input port of another."""

    source: str
    target: str
    source_port: str = "out"
    target_port: str = "in"

    @property
    def id(self) -> str:
        return f"{self.source}.{self.source_port}->{self.target}.{self.target_port}"

    @property
    def short_id(self) -> str:
        return f"{self.source}->{self.target}"


@dataclass(frozen=True)
class OpticalNetwork:
    """Immutable directed graph of optical elements."""

    elements: Tuple[Element, ...]
    connections: Tuple[Connection, ...]
    _by_id: Dict[str, Element] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_by_id", {element.id: element for element in self.elements})

    def element(self, element_id: str) -> Element:
        """Get an element by id.

        Raises:
            KeyError: If no element has that id
        """
        if element_id not in self._by_id:
            raise KeyError(f"Unknown element: {element_id}")
        return self._by_id[element_id]

    def has_element(self, element_id: str) -> bool:
        return element_id in self._by_id

    def of_kind(self, kind: ElementKind) -> List[Element]:
        return [element for element in self.elements if element.kind is kind]

    @property
    def mirrors(self) -> List[Element]:
        return self.of_kind(ElementKind.MIRROR)

    @property
    def mirror_ids(self) -> List[str]:
        return [mirror.id for mirror in self.mirrors]

    @property
    def vibrations(self) -> Dict[str, VibrationSpec]:
        """Vibration of every mirror that has one, by mirror id."""
        return {mirror.id: mirror.vibration for mirror in self.mirrors if mirror.vibration is not None}

    @property
    def source(self) -> Element:
        return self._single(ElementKind.SOURCE)

    @property
    def detector(self) -> Element:
        return self._single(ElementKind.DETECTOR)

    def _single(self, kind: ElementKind) -> Element:
        found = self.of_kind(kind)
        if len(found) != 1:
            raise TopologyError(f"Expected exactly one {kind.value}, found {len(found)}")
        return found[0]

    def outgoing(self, element_id: str) -> List[Connection]:
        return [c for c in self.connections if c.source == element_id]

    def incoming(self, element_id: str) -> List[Connection]:
        return [c for c in self.connections if c.target == element_id]

    def connection(self, edge: Union[str, Connection]) -> Connection:
        """Resolve a connection from its id.

        Args:
            edge: Full id "SRC.port->DST.port", short id "SRC->DST" or a Connection

        Returns:
            The matching connection

        Raises:
            KeyError: If the edge is unknown or the short id is ambiguous
        """
        if isinstance(edge, Connection):
            edge = edge.id
        exact = [c for c in self.connections if c.id == edge]
        if exact:
            return exact[0]
        short = [c for c in self.connections if c.short_id == edge]
        if len(short) == 1:
            return short[0]
        if len(short) > 1:
            raise KeyError(f"Ambiguous connection '{edge}': use one of {[c.id for c in short]}")
        raise KeyError(f"Unknown connection: {edge}")

    def find_cycle(self) -> Optional[List[str]]:
        """Return the element ids of one directed cycle, or None if the graph is acyclic."""
        state: Dict[str, int] = {}
        stack: List[str] = []

        def visit(node: str) -> Optional[List[str]]:
            state[node] = 1
            stack.append(node)
            for conn in self.outgoing(node):
                if state.get(conn.target) == 1:
                    return stack[stack.index(conn.target):] + [conn.target]
                if conn.target not in state:
                    cycle = visit(conn.target)
                    if cycle:
                        return cycle
            stack.pop()
            state[node] = 2
            return None

        for element in self.elements:
            if element.id not in state:
                cycle = visit(element.id)
                if cycle:
                    return cycle
        return None

    def topological_order(self) -> List[str]:
        """Element ids ordered so every connection points forward.

        Raises:
            TopologyError: If the graph has a cycle
        """
        cycle = self.find_cycle()
        if cycle:
            raise TopologyError(f"Network has a cycle: {' -> '.join(cycle)}")

        indegree = Counter({element.id: 0 for element in self.elements})
        for conn in self.connections:
            if conn.target in indegree:
                indegree[conn.target] += 1

        ready = sorted(node for node, degree in indegree.items() if degree == 0)
        order: List[str] = []
        while ready:
            node = ready.pop(0)
            order.append(node)
            for conn in self.outgoing(node):
                if conn.target not in indegree:
                    continue
                indegree[conn.target] -= 1
                if indegree[conn.target] == 0:
                    ready.append(conn.target)
                    ready.sort()
        return order

    def reachable_from(self, start: str) -> Set[str]:
        """Element ids reachable from ``start`` (inclusive) following connections."""
        seen: Set[str] = set()
        pending = [start]
        while pending:
            node = pending.pop()
            if node in seen:
                continue
            seen.add(node)
            pending.extend(c.target for c in self.outgoing(node))
        return seen

    def reaching(self, end: str) -> Set[str]:
        """Element ids from which ``end`` can be reached (inclusive)."""
        seen: Set[str] = set()
        pending = [end]
        while pending:
            node = pending.pop()
            if node in seen:
                continue
            seen.add(node)
            pending.extend(c.source for c in self.incoming(node))
        return seen


class NetworkBuilder:
    """Fluent construction of an OpticalNetwork."""

    def __init__(self):
        self._elements: List[Element] = []
        self._connections: List[Connection] = []

    def add(self, *elements: Element) -> "NetworkBuilder":
        self._elements.extend(elements)
        return self

    def connect(
        self,
        source: str,
        target: str,
        source_port: str = "out",
        target_port: str = "in",
    ) -> "NetworkBuilder":
        self._connections.append(Connection(source, target, source_port, target_port))
        return self

    def chain(self, *element_ids: str) -> "NetworkBuilder":
        """Connect single-port elements one after another (out -> in)."""
        for source, target in zip(element_ids, element_ids[1:]):
            self.connect(source, target)
        return self

    def build(self) -> OpticalNetwork:
        return OpticalNetwork(tuple(self._elements), tuple(self._connections))


def validate(network: OpticalNetwork) -> List[str]:
    """Check a network for structural problems.

    Args:
        network: Network to check

    Returns:
        Human-readable diagnostics; an empty list means the network is valid
    """
    diagnostics: List[str] = []

    for kind in (ElementKind.SOURCE, ElementKind.DETECTOR):
        count = len(network.of_kind(kind))
        if count != 1:
            diagnostics.append(f"expected exactly one {kind.value}, found {count}")

    for element_id, count in Counter(e.id for e in network.elements).items():
        if count > 1:
            what = "mirror label" if network.element(element_id).is_mirror else "element id"
            diagnostics.append(f"duplicate {what} '{element_id}'")

    for splitter in network.of_kind(ElementKind.BEAM_SPLITTER):
        r = splitter.reflect_fraction
        if not 0.0 < r < 1.0:
            diagnostics.append(f"beam splitter '{splitter.id}' reflect_fraction {r} outside (0, 1)")

    diagnostics.extend(_connection_diagnostics(network))

    cycle = network.find_cycle()
    if cycle:
        diagnostics.append(f"cycle: {' -> '.join(cycle)}")

    linked = {c.source for c in network.connections} | {c.target for c in network.connections}
    for element in network.elements:
        if element.id not in linked and len(network.elements) > 1:
            diagnostics.append(f"orphan element '{element.id}' has no connections")

    if not cycle:
        diagnostics.extend(_unreached_mirror_diagnostics(network, linked))

    return diagnostics


def _connection_diagnostics(network: OpticalNetwork) -> Iterator[str]:
    used: Counter = Counter()
    for conn in network.connections:
        for element_id, port, ports in (
            (conn.source, conn.source_port, "output_ports"),
            (conn.target, conn.target_port, "input_ports"),
        ):
            if not network.has_element(element_id):
                yield f"connection {conn.id} refers to unknown element '{element_id}'"
                continue
            if port not in getattr(network.element(element_id), ports):
                yield f"connection {conn.id} uses invalid port '{port}' of '{element_id}'"
        used[(conn.source, "out", conn.source_port)] += 1
        used[(conn.target, "in", conn.target_port)] += 1

    for (element_id, _, port), count in used.items():
        if count > 1:
            yield f"port '{port}' of '{element_id}' is used by {count} connections"


def _unreached_mirror_diagnostics(network: OpticalNetwork, linked: Set[str]) -> Iterator[str]:
    sources = network.of_kind(ElementKind.SOURCE)
    detectors = network.of_kind(ElementKind.DETECTOR)

    from_source: Set[str] = set()
    for source in sources:
        from_source |= network.reachable_from(source.id)
    to_detector: Set[str] = set()
    for detector in detectors:
        to_detector |= network.reaching(detector.id)

    behind_block: Set[str] = set()
    for block in network.of_kind(ElementKind.BLOCK):
        behind_block |= network.reachable_from(block.id) - {block.id}

    for mirror in network.mirrors:
        if mirror.id not in linked:
            continue
        on_route = mirror.id in from_source and mirror.id in to_detector
        if not on_route and mirror.id not in behind_block:
            yield f"mirror '{mirror.id}' lies on no source->detector route"


def apply_block(
    network: OpticalNetwork,
    edge: Union[str, Connection],
    block_id: Optional[str] = None,
) -> OpticalNetwork:
    """Insert a Block on one connection, returning a new network.

    Args:
        network: Network to copy
        edge: Connection id (full or short) or Connection
        block_id: Id for the new block (generated if omitted)

    Returns:
        Copy of the network with the connection split by a Block

    Raises:
        KeyError: If the edge does not exist
    """
    target = network.connection(edge)

    if block_id is None:
        index = 1
        while network.has_element(f"block{index}"):
            index += 1
        block_id = f"block{index}"
    elif network.has_element(block_id):
        raise ValueError(f"Element id '{block_id}' already exists")

    connections: List[Connection] = []
    for conn in network.connections:
        if conn == target:
            connections.append(replace(conn, target=block_id, target_port="in"))
            connections.append(Connection(block_id, conn.target, "out", conn.target_port))
        else:
            connections.append(conn)

    return OpticalNetwork(network.elements + (Element.block(block_id),), tuple(connections))
