"""Karp-Miller coverability trees for nets without parameters."""

from collections import deque
from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional, Tuple
import logging

from ..core.models import Limits
from .model import OMEGA, PPN, Marking, dominates, fire

logger = logging.getLogger(__name__)


@dataclass
class KMNode:
    marking: Marking
    parent: Optional[int]
    transition: Optional[str]
    children: List[int] = field(default_factory=list)
    duplicate: bool = False


@dataclass
class KMTree:
    """
    Coverability tree of a net.

    `complete` is False when exploration stopped at the state budget; the
    bounded verdict and the place sets then cover only the explored part.
    """
    net: PPN
    nodes: List[KMNode]
    complete: bool = True

    @property
    def bounded(self) -> bool:
        return all(OMEGA not in node.marking for node in self.nodes)

    def omega_places(self, index: int) -> FrozenSet[str]:
        marking = self.nodes[index].marking
        return frozenset(p for p, c in zip(self.net.places, marking) if c == OMEGA)

    @property
    def unbounded_places(self) -> FrozenSet[str]:
        places: FrozenSet[str] = frozenset()
        for index in range(len(self.nodes)):
            places |= self.omega_places(index)
        return places

    @property
    def simultaneously_unbounded(self) -> List[FrozenSet[str]]:
        """Maximal sets of places that are ω in one node, sorted."""
        sets = {self.omega_places(i) for i in range(len(self.nodes))}
        sets.discard(frozenset())
        maximal = [s for s in sets if not any(s < other for other in sets)]
        return sorted(maximal, key=sorted)

    def path_to(self, index: int) -> List[str]:
        """Transitions from the root to a node."""
        steps: List[str] = []
        while self.nodes[index].parent is not None:
            steps.append(self.nodes[index].transition)
            index = self.nodes[index].parent
        return steps[::-1]

    def covering_node(self, target: Marking) -> Optional[int]:
        for index, node in enumerate(self.nodes):
            if dominates(node.marking, target):
                return index
        return None


def _accelerate(tree: KMTree, parent: int, marking: Marking) -> Marking:
    """Raise to ω every place strictly increased over a dominated ancestor."""
    counts = list(marking)
    ancestor: Optional[int] = parent
    while ancestor is not None:
        earlier = tree.nodes[ancestor].marking
        if dominates(counts, earlier) and tuple(counts) != earlier:
            for i, (now, then) in enumerate(zip(counts, earlier)):
                if now > then:
                    counts[i] = OMEGA
        ancestor = tree.nodes[ancestor].parent
    return tuple(counts)


def km_analyze(net: PPN, limits: Optional[Limits] = None) -> KMTree:
    """
    Build the Karp-Miller tree of a net without parameters.

    A node whose marking already occurs among processed nodes is kept as a
    leaf and not expanded.

    Args:
        net: Net without parameters; OMEGA weights are allowed on outputs
        limits: `max_states` caps the number of nodes

    Returns:
        KMTree with its `bounded` flag and unbounded place sets

    Usage:
        tree = km_analyze(instantiate(loan, {"a": 0, "b": 1, "c": 2, "d": 3, "e": 1, "f": 1}))
        tree.bounded
    """
    if not net.is_numeric:
        raise ValueError("The coverability tree needs a net without parameters")
    limits = limits or Limits()
    tree = KMTree(net, [KMNode(net.initial_marking(), None, None)])
    seen = set()
    queue = deque([0])
    while queue:
        index = queue.popleft()
        node = tree.nodes[index]
        if node.marking in seen:
            node.duplicate = True
            continue
        seen.add(node.marking)
        for transition in net.transitions:
            following = fire(net, node.marking, transition)
            if following is None:
                continue
            if len(tree.nodes) >= limits.max_states:
                tree.complete = False
                logger.warning(f"Coverability tree stopped at {len(tree.nodes)} nodes")
                return tree
            child = KMNode(_accelerate(tree, index, following), index, transition)
            tree.nodes.append(child)
            node.children.append(len(tree.nodes) - 1)
            queue.append(len(tree.nodes) - 1)
    logger.info(f"Coverability tree with {len(tree.nodes)} nodes, bounded={tree.bounded}")
    return tree


def coverable(net: PPN, target: Marking, limits: Optional[Limits] = None) -> Tuple[bool, Optional[KMTree]]:
    """
    Whether some reachable marking covers `target`.

    The tree is returned so callers can also read boundedness; a False
    answer from an incomplete tree is not definite.
    """
    tree = km_analyze(net, limits)
    return tree.covering_node(target) is not None, tree
