// The entry-request form: state, validation, and payload construction.
// buildPayload writes fields in the same order the sample documents use,
// so a form loaded from a stored request serializes back byte-identically.

import type { RequestPayload } from './types.js';

export interface FormState {
  requestId?: string;
  pilotId: string;
  vehicleModel: string;
  missionId: string;
  purpose: string;
  plannedDuration: string; // raw input text; validated before submission
  vlos: boolean;
  airspaceId: string;
  requestedStart: string;
  fullyCharged: boolean;
  chargeFraction: string;
  selected: string[];
  deselected: string[];
  partial: boolean;
  declaredSpecOverrides?: Record<string, unknown>;
}

export interface FieldError {
  field: string;
  message: string;
}

export function defaultFormState(): FormState {
  return {
    pilotId: '',
    vehicleModel: '',
    missionId: '',
    purpose: 'recreational',
    plannedDuration: '10',
    vlos: true,
    airspaceId: 'A1',
    requestedStart: '',
    fullyCharged: true,
    chargeFraction: '',
    selected: [],
    deselected: [],
    partial: true,
  };
}

export function validateForm(state: FormState): FieldError[] {
  const errors: FieldError[] = [];
  if (!state.pilotId.trim()) errors.push({ field: 'pilotId', message: 'pilot id is required' });
  if (!state.vehicleModel.trim()) {
    errors.push({ field: 'vehicleModel', message: 'vehicle model is required' });
  }
  if (!state.missionId.trim()) {
    errors.push({ field: 'missionId', message: 'mission id is required' });
  }
  const duration = Number(state.plannedDuration);
  if (!Number.isFinite(duration) || duration <= 0) {
    errors.push({ field: 'plannedDuration', message: 'planned duration must be a positive number of minutes' });
  }
  if (!state.requestedStart.trim()) {
    errors.push({ field: 'requestedStart', message: 'requested start time is required' });
  }
  if (!state.fullyCharged && state.chargeFraction.trim() !== '') {
    const fraction = Number(state.chargeFraction);
    if (!Number.isFinite(fraction) || fraction < 0 || fraction > 1) {
      errors.push({ field: 'chargeFraction', message: 'charge fraction must lie between 0 and 1' });
    }
  }
  return errors;
}

export function buildPayload(state: FormState): RequestPayload {
  const payload: RequestPayload = {
    ...(state.requestId !== undefined ? { requestId: state.requestId } : {}),
    pilotId: state.pilotId,
    vehicleModel: state.vehicleModel,
    mission: {
      missionId: state.missionId,
      purpose: state.purpose,
      plannedDuration: Number(state.plannedDuration),
      vlos: state.vlos,
      airspaceId: state.airspaceId,
      requestedStart: state.requestedStart,
    },
  };
  if (state.fullyCharged) {
    payload.batteryState = { fullyCharged: true };
  } else if (state.chargeFraction.trim() !== '') {
    payload.batteryState = { chargeFraction: Number(state.chargeFraction) };
  }
  payload.configuration = {
    selected: state.selected,
    deselected: state.deselected,
    partial: state.partial,
  };
  if (state.declaredSpecOverrides && Object.keys(state.declaredSpecOverrides).length > 0) {
    payload.declaredSpecOverrides = state.declaredSpecOverrides;
  }
  return payload;
}

/** Populate the form from a stored request document. */
export function formStateFromPayload(payload: RequestPayload): FormState {
  const battery = payload.batteryState;
  return {
    ...(payload.requestId !== undefined ? { requestId: payload.requestId } : {}),
    pilotId: payload.pilotId,
    vehicleModel: payload.vehicleModel,
    missionId: payload.mission.missionId,
    purpose: payload.mission.purpose,
    plannedDuration: String(payload.mission.plannedDuration),
    vlos: payload.mission.vlos,
    airspaceId: payload.mission.airspaceId,
    requestedStart: payload.mission.requestedStart,
    fullyCharged: battery?.fullyCharged === true,
    chargeFraction:
      battery?.chargeFraction !== undefined ? String(battery.chargeFraction) : '',
    selected: payload.configuration?.selected ?? [],
    deselected: payload.configuration?.deselected ?? [],
    partial: payload.configuration?.partial ?? true,
    ...(payload.declaredSpecOverrides !== undefined
      ? { declaredSpecOverrides: payload.declaredSpecOverrides }
      : {}),
  };
}
