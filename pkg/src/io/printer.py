"""Render models back into their text formats."""

from typing import List
import logging

from ..arctl.model import MTS
from ..pimc.model import IMC, MC, PIMC
from ..ppn.model import PPN
from ..pta.model import PTA

logger = logging.getLogger(__name__)


def _set(names) -> str:
    return "{" + ", ".join(names) + "}"


def _labelled_states(states, initial, labels) -> List[str]:
    lines = []
    for state in states:
        label = labels.get(state)
        lines.append(f"state {state} labels {_set(sorted(label))};" if label else f"state {state};")
    lines.append(f"init {initial};")
    return lines


def render_pta(pta: PTA) -> str:
    lines: List[str] = []
    if pta.clocks:
        lines.append(f"clocks {' '.join(pta.clock_names)};")
    if pta.parameters:
        lines.append(f"params {' '.join(pta.parameter_names)};")
    if pta.actions:
        lines.append(f"actions {' '.join(sorted(pta.actions))};")
    for name, interval in pta.intervals.items():
        lines.append(f"bound {name} {interval};")
    for location in pta.locations:
        if location in pta.invariants:
            lines.append(f"loc {location} invariant {pta.invariants[location]};")
        else:
            lines.append(f"loc {location};")
    lines.append(f"init {pta.initial};")
    if pta.accepting:
        lines.append(f"accepting {' '.join(sorted(pta.accepting))};")
    for edge in pta.edges:
        line = f"edge {edge.source} -> {edge.target} sync {edge.action}"
        if edge.guard.atoms:
            line += f" guard {edge.guard}"
        if edge.resets:
            line += f" reset {_set(sorted(edge.resets))}"
        lines.append(line + ";")
    return "\n".join(lines) + "\n"


def render_chain(model) -> str:
    lines: List[str] = []
    if isinstance(model, PIMC) and model.parameters:
        lines.append(f"params {' '.join(model.parameters)};")
    lines.extend(_labelled_states(model.states, model.initial, model.labels))
    if isinstance(model, MC):
        for (source, target), probability in model.matrix.items():
            lines.append(f"trans {source} -> {target} {probability};")
    else:
        for (source, target), interval in model.phi.items():
            lines.append(f"trans {source} -> {target} {interval};")
    return "\n".join(lines) + "\n"


def render_mts(mts: MTS) -> str:
    lines = [f"actions {' '.join(mts.actions)};"]
    if mts.variables:
        lines.append(f"vars {' '.join(mts.variables)};")
    lines.extend(_labelled_states(mts.states, mts.initial, mts.labels))
    for source, action, target in mts.transitions:
        lines.append(f"trans {source} -{action}-> {target};")
    return "\n".join(lines) + "\n"


def render_ppn(net: PPN) -> str:
    lines: List[str] = []
    if net.parameters:
        lines.append(f"params {' '.join(net.parameters)};")
    for place in net.places:
        if place in net.initial:
            lines.append(f"place {place} init {net.initial[place]};")
        else:
            lines.append(f"place {place};")
    for transition in net.transitions:
        line = f"trans {transition}"
        for word, weights in (("pre", net.pre), ("post", net.post)):
            arcs = [f"{p}: {w}" for (p, t), w in weights.items() if t == transition]
            if arcs:
                line += f" {word} {_set(arcs)}"
        lines.append(line + ";")
    return "\n".join(lines) + "\n"


def render_model(model) -> str:
    """
    Text form of a model that parses back to the same model.

    Examples:
        >>> parse_model(render_model(coffee), "pta").locations == coffee.locations
        True
    """
    if isinstance(model, PTA):
        return render_pta(model)
    if isinstance(model, (MC, PIMC, IMC)):
        return render_chain(model)
    if isinstance(model, MTS):
        return render_mts(model)
    if isinstance(model, PPN):
        return render_ppn(model)
    raise TypeError(f"Cannot render {type(model).__name__}")
