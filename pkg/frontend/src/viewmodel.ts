// The case view model mirrors the service's documents exactly. Statuses,
// the decision banner, and the unresolved list are copied, never derived:
// a console that recomputed argument semantics could silently disagree
// with the authority it fronts.

import type {
  DecisionDoc,
  InstanceDoc,
  InstanceEdge,
  InstanceNode,
  NodeStatus,
} from './types.js';

export interface CaseNodeView {
  id: string;
  kind: InstanceNode['kind'];
  text: string;
  status: NodeStatus;
  traceLink: string;
  bindings: { name: string; value: string; provenance: string }[];
  emphasized: boolean; // violated leaves get the strong styling
}

export interface BannerView {
  verdict: DecisionDoc['verdict'];
  label: string;
  tone: 'admit' | 'deny' | 'advisory';
  hypothetical: boolean;
  note: string;
}

export interface CaseViewModel {
  instanceId: string;
  templateId: string;
  banner: BannerView;
  topGoalStatus: NodeStatus;
  nodes: CaseNodeView[];
  edges: InstanceEdge[];
  unresolvedParameters: string[];
  advisoryConditions: string[];
}

export function formatValue(value: number | string | boolean): string {
  if (typeof value === 'boolean') return value ? 'true' : 'false';
  if (typeof value === 'number' && Number.isInteger(value)) return String(value);
  return String(value);
}

export function bannerFromDecision(decision: DecisionDoc): BannerView {
  const tone =
    decision.verdict === 'admit'
      ? 'admit'
      : decision.verdict === 'deny'
        ? 'deny'
        : 'advisory';
  const label =
    decision.verdict === 'admit'
      ? 'ADMIT'
      : decision.verdict === 'deny'
        ? 'DENY'
        : 'ADMIT (advisory attached)';
  return {
    verdict: decision.verdict,
    label,
    tone,
    hypothetical: decision.hypothetical === true,
    note: decision.note,
  };
}

export function buildCaseViewModel(
  instance: InstanceDoc,
  decision: DecisionDoc,
): CaseViewModel {
  const nodes = instance.nodes.map((node) => ({
    id: node.id,
    kind: node.kind,
    text: node.text,
    status: node.status,
    traceLink: node.traceLink,
    bindings: node.parameters.map((name) => {
      const binding = instance.bindings[name];
      return binding === undefined
        ? { name, value: 'unresolved', provenance: 'missing' }
        : { name, value: formatValue(binding.value), provenance: binding.provenance };
    }),
    emphasized: node.kind === 'solution' && node.status === 'violated',
  }));
  return {
    instanceId: instance.instanceId,
    templateId: instance.templateId,
    banner: bannerFromDecision(decision),
    topGoalStatus: instance.topGoalStatus,
    nodes,
    edges: instance.edges,
    unresolvedParameters: instance.unresolvedParameters,
    advisoryConditions:
      decision.advisory === null || decision.advisory.templateId !== instance.templateId
        ? []
        : decision.advisory.entries.map((e) => `${e.nodeId}: ${e.condition}`),
  };
}

/** The statuses a rendered view displays, keyed by node id (for assertions). */
export function displayedStatuses(vm: CaseViewModel): Record<string, NodeStatus> {
  const out: Record<string, NodeStatus> = {};
  for (const node of vm.nodes) out[node.id] = node.status;
  return out;
}
