"""The entry decision itself, applied to already-instantiated safety cases."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from ..cases.instantiate import (
    Explanation,
    ExplanationEntry,
    NodeStatus,
    SafetyCaseInstance,
    explain_denial,
)
from ..cases.request import FlightRequest
from ..evidence.pilots import PilotRecord
from ..gsn.model import SafetyCaseTemplate
from .policy import AirspacePolicy, PolicyMode


class Verdict(str, enum.Enum):
    ADMIT = "admit"
    DENY = "deny"
    ADMIT_WITH_ADVISORY = "admitWithAdvisory"


@dataclass(frozen=True)
class EntryDecision:
    request_id: str
    verdict: Verdict
    basis_instance_ids: tuple[str, ...]
    policy_mode: PolicyMode
    decided_at: str
    advisory: Optional[Explanation] = None
    note: str = ""

    def __post_init__(self) -> None:
        if self.verdict is not Verdict.ADMIT and self.advisory is None:
            raise ValueError("deny and admit-with-advisory decisions need an explanation")


def _explanation_for(
    instances: list[tuple[SafetyCaseInstance, SafetyCaseTemplate]],
) -> Optional[Explanation]:
    for instance, template in instances:
        if instance.top_goal_status is not NodeStatus.SATISFIED:
            return explain_denial(instance, template)
    return None


def required_instances(
    instances: list[tuple[SafetyCaseInstance, SafetyCaseTemplate]],
) -> list[tuple[SafetyCaseInstance, SafetyCaseTemplate]]:
    """Which of the evaluated instances carry the entry argument.

    The catalog's templates are alternatives: a satisfied pilot case admits
    on its own, otherwise the remaining (wind) case becomes the required
    argument.
    """
    if instances[0][0].top_goal_status is NodeStatus.SATISFIED or len(instances) == 1:
        return [instances[0]]
    return instances[1:]


def combined_status(
    instances: list[tuple[SafetyCaseInstance, SafetyCaseTemplate]],
) -> NodeStatus:
    """Overall status of the required instances, violated dominating unresolved."""
    statuses = [instance.top_goal_status for instance, _ in required_instances(instances)]
    if NodeStatus.VIOLATED in statuses:
        return NodeStatus.VIOLATED
    if NodeStatus.UNRESOLVED in statuses:
        return NodeStatus.UNRESOLVED
    return NodeStatus.SATISFIED


def decide(
    request: FlightRequest,
    policy: AirspacePolicy,
    instances: list[tuple[SafetyCaseInstance, SafetyCaseTemplate]],
    *,
    pilot: Optional[PilotRecord] = None,
    decided_at: str = "",
) -> EntryDecision:
    """Entry decision over the evaluated instances for one request.

    Closed access admits only when every required instance is satisfied;
    unresolved evidence denies with a re-evaluate note rather than masking
    the gap. Open access admits certified pilots in good standing and turns
    a non-satisfied wind case into an advisory instead of a denial.
    """
    if not instances:
        raise ValueError("decide needs at least one evaluated instance")
    ids = tuple(instance.instance_id for instance, _ in instances)

    if policy.mode is PolicyMode.CLOSED_ACCESS:
        required = required_instances(instances)
        explanation = _explanation_for(required)
        if explanation is None:
            return EntryDecision(
                request_id=request.request_id,
                verdict=Verdict.ADMIT,
                basis_instance_ids=tuple(i.instance_id for i, _ in required),
                policy_mode=policy.mode,
                decided_at=decided_at,
            )
        note = (
            "entry denied; unresolved evidence, re-evaluate closer to the flight"
            if explanation.re_evaluate
            else "entry denied; the safety case is not satisfied"
        )
        return EntryDecision(
            request_id=request.request_id,
            verdict=Verdict.DENY,
            basis_instance_ids=ids,
            policy_mode=policy.mode,
            decided_at=decided_at,
            advisory=explanation,
            note=note,
        )

    # open access: certification and standing decide; the wind case advises
    certified = (
        pilot is not None
        and policy.required_certifications <= pilot.certifications
        and not pilot.adverse_history
    )
    if not certified:
        explanation = _explanation_for(instances)
        if explanation is None:
            # instances alone cannot show the standing problem; synthesize
            explanation = Explanation(
                instance_id=ids[0],
                template_id=instances[0][0].template_id,
                entries=(ExplanationEntry(
                    node_id=instances[0][1].root_goal,
                    status=NodeStatus.VIOLATED,
                    condition="pilot is not certified for this airspace or has prior incidents",
                    goal_chain=(),
                ),),
            )
        return EntryDecision(
            request_id=request.request_id,
            verdict=Verdict.DENY,
            basis_instance_ids=ids,
            policy_mode=policy.mode,
            decided_at=decided_at,
            advisory=explanation,
            note="entry denied; open access requires a certified pilot in good standing",
        )
    wind_pairs = [
        (instance, template) for instance, template in instances
        if instance.template_id.startswith("wind")
    ]
    advisory = _explanation_for(wind_pairs)
    if advisory is not None:
        return EntryDecision(
            request_id=request.request_id,
            verdict=Verdict.ADMIT_WITH_ADVISORY,
            basis_instance_ids=ids,
            policy_mode=policy.mode,
            decided_at=decided_at,
            advisory=advisory,
            note="admitted on certification; review the attached safety-case advisory",
        )
    return EntryDecision(
        request_id=request.request_id,
        verdict=Verdict.ADMIT,
        basis_instance_ids=ids,
        policy_mode=policy.mode,
        decided_at=decided_at,
    )
