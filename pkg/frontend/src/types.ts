// Service document types, mirroring the JSON contracts in ../docs/formats.md.
// The console never derives these values itself; it displays what the
// service sent.

export type NodeStatus = 'satisfied' | 'violated' | 'unresolved';

export type NodeKind =
  | 'goal'
  | 'strategy'
  | 'context'
  | 'solution'
  | 'assumption'
  | 'justification';

export interface InstanceNode {
  id: string;
  kind: NodeKind;
  text: string;
  status: NodeStatus;
  traceLink: string;
  parameters: string[];
}

export interface InstanceEdge {
  from: string;
  to: string;
  kind: 'supportedBy' | 'inContextOf';
}

export interface BindingDoc {
  value: number | string | boolean;
  provenance: string;
}

export interface InstanceDoc {
  instanceId: string;
  templateId: string;
  templateVersion: string;
  generatedAt: string;
  topGoalStatus: NodeStatus;
  bindings: Record<string, BindingDoc>;
  unresolvedParameters: string[];
  nodes: InstanceNode[];
  edges: InstanceEdge[];
}

export interface ExplanationEntryDoc {
  nodeId: string;
  status: NodeStatus;
  condition: string;
  goalChain: string[];
}

export interface AdvisoryDoc {
  instanceId: string;
  templateId: string;
  reEvaluate: boolean;
  entries: ExplanationEntryDoc[];
}

export type VerdictValue = 'admit' | 'deny' | 'admitWithAdvisory';

export interface DecisionDoc {
  requestId: string;
  verdict: VerdictValue;
  policyMode: string;
  decidedAt: string;
  basisInstanceIds: string[];
  note: string;
  advisory: AdvisoryDoc | null;
  hypothetical?: boolean;
}

export interface SubmitResponse {
  requestId: string;
  decision: DecisionDoc;
  instances: InstanceDoc[];
}

export interface WhatIfResponse {
  requestId: string;
  hypothetical: boolean;
  decision: DecisionDoc;
  instances: InstanceDoc[];
}

export interface MissionPayload {
  missionId: string;
  purpose: string;
  plannedDuration: number;
  vlos: boolean;
  airspaceId: string;
  requestedStart: string;
}

export interface RequestPayload {
  requestId?: string;
  pilotId: string;
  vehicleModel: string;
  mission: MissionPayload;
  batteryState?: { fullyCharged?: boolean; chargeFraction?: number };
  configuration?: { selected: string[]; deselected: string[]; partial: boolean };
  declaredSpecOverrides?: Record<string, unknown>;
}

export interface WhatIfOverrides {
  surfaceWind?: number;
  gusts?: number;
  temperature?: number;
  visibility?: number | 'unlimited';
  precipitation?: string;
  vehicleModel?: string;
  requestedStart?: string;
  declaredSpecOverrides?: Record<string, unknown>;
}

export interface TemplateSummary {
  templateId: string;
  version: string;
  rootGoal: string;
  nodeCount: number;
  solutionNodes: string[];
}
