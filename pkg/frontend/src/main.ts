// DOM wiring for the pilot console. All argument semantics live on the
// service side; this file only moves documents between the API client,
// the view-model builders, and the page.

import { ApiClient, ServiceError } from './api.js';
import { buildPayload, defaultFormState, formStateFromPayload, validateForm } from './form.js';
import type { FormState } from './form.js';
import { isInstanceDocLike, renderCaseGraph, renderErrorPanel } from './graph.js';
import type { InstanceDoc, DecisionDoc, RequestPayload } from './types.js';
import { buildCaseViewModel } from './viewmodel.js';
import { buildOverrides, emptyWhatIfInputs, hasOverrides, validateWhatIf } from './whatif.js';
import type { WhatIfInputs } from './whatif.js';

interface ConsoleState {
  requestId: string | null;
  storedPayload: RequestPayload | null;
  instances: InstanceDoc[];
  decision: DecisionDoc | null;
  activeTemplate: string | null;
}

const state: ConsoleState = {
  requestId: null,
  storedPayload: null,
  instances: [],
  decision: null,
  activeTemplate: null,
};

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
}

function api(): ApiClient {
  return new ApiClient((el<HTMLInputElement>('service-url').value || '').replace(/\/$/, ''));
}

function readFormState(): FormState {
  const s = defaultFormState();
  s.pilotId = el<HTMLInputElement>('f-pilot').value;
  s.vehicleModel = el<HTMLInputElement>('f-vehicle').value;
  s.missionId = el<HTMLInputElement>('f-mission').value;
  s.purpose = el<HTMLSelectElement>('f-purpose').value;
  s.plannedDuration = el<HTMLInputElement>('f-duration').value;
  s.vlos = el<HTMLInputElement>('f-vlos').checked;
  s.airspaceId = el<HTMLInputElement>('f-airspace').value;
  s.requestedStart = el<HTMLInputElement>('f-start').value;
  s.fullyCharged = el<HTMLInputElement>('f-charged').checked;
  s.chargeFraction = el<HTMLInputElement>('f-fraction').value;
  s.selected = splitNames(el<HTMLInputElement>('f-selected').value);
  s.deselected = splitNames(el<HTMLInputElement>('f-deselected').value);
  return s;
}

function splitNames(text: string): string[] {
  return text
    .split(',')
    .map((t) => t.trim())
    .filter((t) => t.length > 0);
}

function writeFormState(s: FormState): void {
  el<HTMLInputElement>('f-pilot').value = s.pilotId;
  el<HTMLInputElement>('f-vehicle').value = s.vehicleModel;
  el<HTMLInputElement>('f-mission').value = s.missionId;
  el<HTMLSelectElement>('f-purpose').value = s.purpose;
  el<HTMLInputElement>('f-duration').value = s.plannedDuration;
  el<HTMLInputElement>('f-vlos').checked = s.vlos;
  el<HTMLInputElement>('f-airspace').value = s.airspaceId;
  el<HTMLInputElement>('f-start').value = s.requestedStart;
  el<HTMLInputElement>('f-charged').checked = s.fullyCharged;
  el<HTMLInputElement>('f-fraction').value = s.chargeFraction;
  el<HTMLInputElement>('f-selected').value = s.selected.join(', ');
  el<HTMLInputElement>('f-deselected').value = s.deselected.join(', ');
}

function showErrors(containerId: string, messages: string[]): void {
  const container = el(containerId);
  container.innerHTML = messages.map((m) => `<li>${m}</li>`).join('');
  container.parentElement!.classList.toggle('hidden', messages.length === 0);
}

function renderView(): void {
  const banner = el('banner');
  const tabs = el('tabs');
  const graphHost = el('graph');
  const sidebar = el('unresolved');
  if (!state.decision || state.instances.length === 0) {
    banner.className = 'banner hidden';
    tabs.innerHTML = '';
    graphHost.innerHTML = '';
    sidebar.innerHTML = '';
    return;
  }
  const active =
    state.instances.find((i) => i.templateId === state.activeTemplate) ?? state.instances[0]!;
  state.activeTemplate = active.templateId;

  if (!isInstanceDocLike(active)) {
    graphHost.innerHTML = renderErrorPanel(JSON.stringify(active).slice(0, 400));
    return;
  }
  const vm = buildCaseViewModel(active, state.decision);

  banner.className = `banner ${vm.banner.tone}${vm.banner.hypothetical ? ' hypothetical' : ''}`;
  banner.textContent = vm.banner.hypothetical
    ? `${vm.banner.label} — hypothetical (not submitted)`
    : vm.banner.label;
  el('banner-note').textContent = vm.banner.note;

  tabs.innerHTML = state.instances
    .map(
      (i) =>
        `<button class="tab${i.templateId === active.templateId ? ' active' : ''}" data-template="${i.templateId}">${i.templateId} · ${i.topGoalStatus}</button>`,
    )
    .join('');
  for (const button of tabs.querySelectorAll<HTMLButtonElement>('button[data-template]')) {
    button.addEventListener('click', () => {
      state.activeTemplate = button.dataset.template ?? null;
      renderView();
    });
  }

  graphHost.innerHTML = renderCaseGraph(vm);
  for (const group of graphHost.querySelectorAll<SVGGElement>('g.node-group')) {
    group.addEventListener('click', () => {
      const nodeId = group.dataset.nodeId!;
      const node = vm.nodes.find((n) => n.id === nodeId);
      if (!node) return;
      el('detail-title').textContent = `${node.id} (${node.kind}) — ${node.status}`;
      el('detail-text').textContent = node.text;
      el('detail-bindings').innerHTML = node.bindings
        .map(
          (b) =>
            `<tr><td>${b.name}</td><td>${b.value}</td><td class="prov">${b.provenance}</td></tr>`,
        )
        .join('');
      el('detail').classList.remove('hidden');
    });
  }

  sidebar.innerHTML =
    vm.unresolvedParameters.length === 0
      ? '<em>all parameters resolved</em>'
      : vm.unresolvedParameters.map((p) => `<li>${p}</li>`).join('');
  el('advisory-list').innerHTML = vm.advisoryConditions.map((c) => `<li>${c}</li>`).join('');
}

async function submitForm(): Promise<void> {
  const formState = readFormState();
  const errors = validateForm(formState);
  showErrors('form-errors', errors.map((e) => `${e.field}: ${e.message}`));
  if (errors.length > 0) return;
  try {
    const response = await api().submitRequest(buildPayload(formState));
    state.requestId = response.requestId;
    state.storedPayload = await api().getRequest(response.requestId);
    state.instances = response.instances;
    state.decision = response.decision;
    state.activeTemplate =
      response.instances.find((i) => i.templateId.startsWith('wind'))?.templateId ?? null;
    el('whatif-panel').classList.remove('hidden');
    renderView();
  } catch (error) {
    if (error instanceof ServiceError) {
      const violations = error.body?.violations ?? [];
      showErrors('form-errors', [error.message, ...violations]);
    } else {
      showErrors('form-errors', [String(error)]);
    }
  }
}

function readWhatIfInputs(): WhatIfInputs {
  const inputs = emptyWhatIfInputs();
  inputs.gusts = el<HTMLInputElement>('w-gusts').value;
  inputs.temperature = el<HTMLInputElement>('w-temperature').value;
  inputs.visibility = el<HTMLInputElement>('w-visibility').value;
  inputs.precipitation = el<HTMLSelectElement>('w-precipitation').value;
  inputs.vehicleModel = el<HTMLInputElement>('w-vehicle').value;
  inputs.requestedStart = el<HTMLInputElement>('w-start').value;
  return inputs;
}

async function runWhatIf(): Promise<void> {
  if (!state.requestId) return;
  const inputs = readWhatIfInputs();
  const errors = validateWhatIf(inputs);
  showErrors('whatif-errors', errors.map((e) => `${e.field}: ${e.message}`));
  if (errors.length > 0) return; // invalid input never reaches the service
  const overrides = buildOverrides(inputs);
  if (!hasOverrides(overrides)) {
    showErrors('whatif-errors', ['set at least one override']);
    return;
  }
  try {
    const response = await api().whatIf(state.requestId, overrides);
    state.instances = response.instances;
    state.decision = response.decision;
    renderView();
  } catch (error) {
    if ((error as Error).name === 'AbortError') return; // superseded by a newer what-if
    if (error instanceof ServiceError) {
      showErrors('whatif-errors', [error.message]);
    } else {
      showErrors('whatif-errors', [String(error)]);
    }
  }
}

async function applyAsNewRequest(): Promise<void> {
  if (!state.storedPayload) return;
  const inputs = readWhatIfInputs();
  const overrides = buildOverrides(inputs);
  const formState = formStateFromPayload(state.storedPayload);
  delete formState.requestId; // a new request gets a fresh content-derived id
  if (overrides.vehicleModel !== undefined) formState.vehicleModel = overrides.vehicleModel;
  if (overrides.requestedStart !== undefined) formState.requestedStart = overrides.requestedStart;
  writeFormState(formState);
  await submitForm();
}

function resetWhatIf(): void {
  el<HTMLInputElement>('w-gusts').value = '';
  el<HTMLInputElement>('w-temperature').value = '';
  el<HTMLInputElement>('w-visibility').value = '';
  el<HTMLSelectElement>('w-precipitation').value = '';
  el<HTMLInputElement>('w-vehicle').value = '';
  el<HTMLInputElement>('w-start').value = '';
  showErrors('whatif-errors', []);
}

export function wireUp(): void {
  el('submit').addEventListener('click', () => void submitForm());
  el('whatif-run').addEventListener('click', () => void runWhatIf());
  el('whatif-apply').addEventListener('click', () => void applyAsNewRequest());
  el('whatif-reset').addEventListener('click', resetWhatIf);
  el('detail-close').addEventListener('click', () => el('detail').classList.add('hidden'));
}

if (typeof document !== 'undefined' && document.getElementById('submit')) {
  wireUp();
}
