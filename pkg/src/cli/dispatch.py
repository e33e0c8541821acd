"""Route a parsed model and query to the engines and build the result document."""

from pathlib import Path
from typing import Any, Callable, Dict, Optional
import logging

from ..arctl import MTS, ParamValuation, eval_fixed, satisfying_states, synthesize, universe_for
from ..constraints import ConstraintSet
from ..core.errors import NotLUError, SemanticError, StepRejectedError, TooManyValuationsError
from ..core.models import Limits, Subcommand, Verdict
from ..io import (
    CheckQuery,
    ConsistencySynthQuery,
    ConsistentQuery,
    ConstraintSetDocument,
    ECCheckQuery,
    EFSynthQuery,
    IPCheckQuery,
    LUClassifyQuery,
    LUEmptinessQuery,
    NConsistentQuery,
    NetMode,
    NetQuery,
    NetQueryKind,
    NetSummaryDocument,
    Query,
    ReachAtQuery,
    ReplayQuery,
    ResultDocument,
    SatisfiesQuery,
    StateValuationsDocument,
    SynthesisQuery,
    load_model,
    rational_text,
    valuation_document,
)
from ..pimc import MC, PIMC, instantiate as instantiate_pimc, is_consistent, n_consistent, point_imc, satisfies
from ..pimc import synthesize_consistency
from ..ppn import (
    PPN,
    KMTree,
    NetAnswer,
    bounded_reach,
    check_valuation as check_net_valuation,
    classify,
    cover_instance,
    enumerate_valuations,
    existential_coverable,
    instantiate as instantiate_ppn,
    km_analyze,
    universal_coverable,
)
from ..pta import (
    PTA,
    classify_lu,
    ec_check,
    ef_synthesis,
    instantiate as instantiate_pta,
    ip_check,
    lu_ef_analysis,
    reach_analysis,
    replay,
    words_and_trace,
)

logger = logging.getLogger(__name__)


def _constraints(document: ResultDocument, constraints: ConstraintSet):
    document.constraints = ConstraintSetDocument.from_constraint_set(constraints)
    document.rendering = str(constraints.simplify())


def _valuation(values: Dict[str, Any]) -> Dict[str, str]:
    return {name: rational_text(value) for name, value in sorted(values.items())}


def _decided(document: ResultDocument, verdict: Verdict) -> ResultDocument:
    document.verdict = verdict
    document.complete = verdict not in (Verdict.UNKNOWN, Verdict.NO_WITHIN_BOUND)
    return document


# ============================================================================
# PTA
# ============================================================================

def run_pta(pta: PTA, query: Query, limits: Limits, document: ResultDocument) -> ResultDocument:
    if isinstance(query, EFSynthQuery):
        result = ef_synthesis(pta, query.targets, limits)
        _constraints(document, result.constraints)
        document.complete = result.complete
        document.details["states_explored"] = result.states_explored
        return document

    if isinstance(query, ReachAtQuery):
        analysis = reach_analysis(instantiate_pta(pta, query.valuation), query.targets, limits)
        document.details["states_explored"] = analysis.states_explored
        return _decided(document, analysis.verdict)

    if isinstance(query, LUEmptinessQuery):
        try:
            analysis = lu_ef_analysis(pta, query.targets, limits)
        except NotLUError as e:
            raise SemanticError([str(e)])
        document.details["states_explored"] = analysis.states_explored
        if analysis.reachable:
            return _decided(document, Verdict.NO)
        return _decided(document, Verdict.YES if analysis.complete else Verdict.UNKNOWN)

    if isinstance(query, LUClassifyQuery):
        classification = classify_lu(pta)
        document.details.update({
            "kind": classification.kind.value,
            "lower": sorted(classification.lower),
            "upper": sorted(classification.upper),
            "conflicting": sorted(classification.conflicting),
        })
        return document

    if isinstance(query, IPCheckQuery):
        result = ip_check(pta, limits)
        document.details["states_explored"] = result.states_explored
        if result.witness is not None:
            document.witness = {"location": result.witness.location, "zone": str(result.witness.zone)}
        _decided(document, result.answer)
        document.complete = result.complete and result.answer is not Verdict.UNKNOWN
        return document

    if isinstance(query, ECCheckQuery):
        return _decided(document, ec_check(instantiate_pta(pta, query.valuation), limits))

    if isinstance(query, ReplayQuery):
        ta = instantiate_pta(pta, query.valuation)
        try:
            run = replay(ta, list(query.steps))
        except StepRejectedError as e:
            document.details.update({"rejected_step": e.step, "reason": e.reason})
            return _decided(document, Verdict.NO)
        summary = words_and_trace(run)
        document.witness = {
            "states": [str(state) for state in run.states],
            "word": list(summary.word),
            "total_time": rational_text(run.total_time),
            "accepting": run.accepting,
        }
        return _decided(document, Verdict.YES)

    raise TypeError(f"Not a PTA query: {query!r}")


# ============================================================================
# PIMC
# ============================================================================

def _chain_file(path: str, model_path: Path) -> Path:
    candidate = Path(path)
    if not candidate.is_absolute() and not candidate.exists():
        candidate = model_path.parent / candidate
    return candidate


def run_pimc(
    pimc: PIMC, query: Query, limits: Limits, document: ResultDocument, model_path: Path
) -> ResultDocument:
    if isinstance(query, ConsistencySynthQuery):
        _constraints(document, synthesize_consistency(pimc))
        return document

    imc = instantiate_pimc(pimc, query.valuation)
    if query.valuation:
        document.witness = {"valuation": _valuation(query.valuation)}

    if isinstance(query, ConsistentQuery):
        result = is_consistent(imc)
        document.details["consistent_states"] = sorted(result.consistent_states)
        if result.witness is not None:
            document.witness = {
                **(document.witness or {}),
                "matrix": {
                    f"{source} -> {target}": rational_text(p)
                    for (source, target), p in sorted(result.witness.matrix.items())
                },
            }
        return _decided(document, Verdict.YES if result.consistent else Verdict.NO)

    if isinstance(query, NConsistentQuery):
        holds = n_consistent(imc, query.state, query.n)
        return _decided(document, Verdict.YES if holds else Verdict.NO)

    if isinstance(query, SatisfiesQuery):
        chain = load_model(_chain_file(query.chain_path, model_path), "mc")
        result = satisfies(chain, imc)
        if result.witness is not None:
            document.witness = {
                **(document.witness or {}),
                "relation": [list(pair) for pair in sorted(result.witness.relation)],
            }
        return _decided(document, Verdict.YES if result.holds else Verdict.NO)

    raise TypeError(f"Not a pIMC query: {query!r}")


# ============================================================================
# MTS
# ============================================================================

def run_mts(
    mts: MTS, query: Query, limits: Limits, document: ResultDocument, caps: Optional[Dict[str, int]] = None
) -> ResultDocument:
    if isinstance(query, SynthesisQuery):
        try:
            universe = universe_for(mts.variables, mts.actions, caps)
        except TooManyValuationsError as e:
            raise SemanticError([str(e)])
        result = synthesize(mts, query.formula, universe)
        document.valuations = StateValuationsDocument.from_synthesis(result, mts.initial)
        document.rendering = str(result[mts.initial])
        return document

    if isinstance(query, CheckQuery):
        valuation = ParamValuation.of(query.valuation)
        holds = eval_fixed(mts, valuation, query.formula, mts.initial)
        document.witness = {"valuation": valuation_document(valuation)}
        document.details["satisfying_states"] = sorted(satisfying_states(mts, valuation, query.formula))
        return _decided(document, Verdict.YES if holds else Verdict.NO)

    raise TypeError(f"Not an MTS query: {query!r}")


# ============================================================================
# PPN
# ============================================================================

def _net_summary(tree: KMTree) -> NetSummaryDocument:
    return NetSummaryDocument(
        nodes=len(tree.nodes),
        complete=tree.complete,
        bounded=tree.bounded,
        unbounded_places=sorted(tree.unbounded_places),
        simultaneously_unbounded=[sorted(s) for s in tree.simultaneously_unbounded],
    )


def _tree_verdict(tree: KMTree, query: NetQuery) -> Verdict:
    if query.kind is NetQueryKind.BOUNDED:
        if not tree.bounded:
            return Verdict.NO
        return Verdict.YES if tree.complete else Verdict.UNKNOWN
    if any(query.places <= group for group in tree.simultaneously_unbounded):
        return Verdict.YES
    return Verdict.NO if tree.complete else Verdict.UNKNOWN


def instance_answer(net: PPN, query: NetQuery, limits: Limits) -> NetAnswer:
    """Answer a query on a parameterless net."""
    if query.kind is NetQueryKind.COVER:
        verdict, sequence = cover_instance(net, net.marking(query.tokens), limits)
        return NetAnswer(verdict, "coverability-tree", sequence=sequence)
    if query.kind is NetQueryKind.REACH:
        return bounded_reach(net, net.marking(query.tokens), limits)
    tree = km_analyze(net, limits)
    return NetAnswer(_tree_verdict(tree, query), "coverability-tree", details={"tree": _net_summary(tree)})


def _enumerated(net: PPN, query: NetQuery, limits: Limits) -> NetAnswer:
    decisive = Verdict.YES if query.mode is NetMode.EXISTS else Verdict.NO
    tried = 0
    for valuation in enumerate_valuations(net, limits.valuation_bound):
        tried += 1
        answer = instance_answer(instantiate_ppn(net, valuation), query, limits)
        if answer.verdict is decisive:
            answer.valuation = valuation
            answer.method = "enumeration"
            answer.details["valuations"] = tried
            return answer
    logger.warning(f"No decisive instance among {tried} valuations up to {limits.valuation_bound}")
    return NetAnswer(Verdict.UNKNOWN, "enumeration", details={"valuations": tried})


def net_answer(net: PPN, query: NetQuery, limits: Limits) -> NetAnswer:
    if query.mode is NetMode.AT or not net.parameters:
        values = check_net_valuation(net, query.valuation)
        answer = instance_answer(instantiate_ppn(net, values), query, limits)
        if net.parameters:
            answer.valuation = values
        return answer
    if query.kind is NetQueryKind.COVER:
        target = net.marking(query.tokens)
        if query.mode is NetMode.EXISTS:
            return existential_coverable(net, target, limits)
        return universal_coverable(net, target, limits)
    return _enumerated(net, query, limits)


def run_ppn(net: PPN, query: NetQuery, limits: Limits, document: ResultDocument) -> ResultDocument:
    document.details["subclasses"] = classify(net).names()
    answer = net_answer(net, query, limits)
    tree = answer.details.pop("tree", None)
    if tree is not None:
        document.net = tree
    document.details["method"] = answer.method
    document.details.update(answer.details)
    witness: Dict[str, Any] = {}
    if answer.valuation is not None:
        witness["valuation"] = {name: answer.valuation[name] for name in sorted(answer.valuation)}
    if answer.sequence is not None:
        witness["sequence"] = list(answer.sequence)
    if witness:
        document.witness = witness
    return _decided(document, answer.verdict)


# ============================================================================
# ENTRY POINT
# ============================================================================

def dispatch(
    subcommand: Subcommand,
    model,
    query: Query,
    query_text: str,
    limits: Limits,
    model_path: Path,
    caps: Optional[Dict[str, int]] = None,
) -> ResultDocument:
    """
    Run one query and collect everything it produced.

    Raises:
        SemanticError: When the query does not apply to the model
    """
    document = ResultDocument(formalism=subcommand.value, query=" ".join(query_text.split()))
    handlers: Dict[Subcommand, Callable[[], ResultDocument]] = {
        Subcommand.PTA: lambda: run_pta(model, query, limits, document),
        Subcommand.PIMC: lambda: run_pimc(model, query, limits, document, model_path),
        Subcommand.MTS: lambda: run_mts(model, query, limits, document, caps),
        Subcommand.PPN: lambda: run_ppn(model, query, limits, document),
    }
    result = handlers[subcommand]()
    logger.info(f"{subcommand.value} query finished: verdict={result.verdict}, complete={result.complete}")
    return result


def as_chain_model(model) -> PIMC:
    """pIMC view of a chain model; a Markov chain becomes its point-interval IMC."""
    return point_imc(model) if isinstance(model, MC) else model
