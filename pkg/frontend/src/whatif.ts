// What-if panel logic: collect override inputs, validate them locally
// (never send a request the service would reject for shape), and label
// everything that came back from a hypothetical evaluation.

import type { WhatIfOverrides } from './types.js';
import type { FieldError } from './form.js';

export interface WhatIfInputs {
  gusts: string;
  temperature: string;
  visibility: string; // number in km or "unlimited"
  precipitation: string; // '', none, light, moderate, heavy
  vehicleModel: string;
  requestedStart: string;
}

export function emptyWhatIfInputs(): WhatIfInputs {
  return {
    gusts: '',
    temperature: '',
    visibility: '',
    precipitation: '',
    vehicleModel: '',
    requestedStart: '',
  };
}

const PRECIPITATION_LEVELS = ['none', 'light', 'moderate', 'heavy'];

export function validateWhatIf(inputs: WhatIfInputs): FieldError[] {
  const errors: FieldError[] = [];
  if (inputs.gusts.trim() !== '') {
    const gusts = Number(inputs.gusts);
    if (!Number.isFinite(gusts) || gusts < 0) {
      errors.push({ field: 'gusts', message: 'gusts must be a non-negative number (m/s)' });
    }
  }
  if (inputs.temperature.trim() !== '' && !Number.isFinite(Number(inputs.temperature))) {
    errors.push({ field: 'temperature', message: 'temperature must be a number (degrees C)' });
  }
  if (inputs.visibility.trim() !== '' && inputs.visibility.trim() !== 'unlimited') {
    const visibility = Number(inputs.visibility);
    if (!Number.isFinite(visibility) || visibility < 0) {
      errors.push({
        field: 'visibility',
        message: 'visibility must be a non-negative number of km or "unlimited"',
      });
    }
  }
  if (
    inputs.precipitation.trim() !== '' &&
    !PRECIPITATION_LEVELS.includes(inputs.precipitation.trim())
  ) {
    errors.push({
      field: 'precipitation',
      message: `precipitation must be one of ${PRECIPITATION_LEVELS.join(', ')}`,
    });
  }
  return errors;
}

export function buildOverrides(inputs: WhatIfInputs): WhatIfOverrides {
  const overrides: WhatIfOverrides = {};
  if (inputs.gusts.trim() !== '') overrides.gusts = Number(inputs.gusts);
  if (inputs.temperature.trim() !== '') overrides.temperature = Number(inputs.temperature);
  if (inputs.visibility.trim() === 'unlimited') {
    overrides.visibility = 'unlimited';
  } else if (inputs.visibility.trim() !== '') {
    overrides.visibility = Number(inputs.visibility);
  }
  if (inputs.precipitation.trim() !== '') overrides.precipitation = inputs.precipitation.trim();
  if (inputs.vehicleModel.trim() !== '') overrides.vehicleModel = inputs.vehicleModel.trim();
  if (inputs.requestedStart.trim() !== '') overrides.requestedStart = inputs.requestedStart.trim();
  return overrides;
}

export function hasOverrides(overrides: WhatIfOverrides): boolean {
  return Object.keys(overrides).length > 0;
}
