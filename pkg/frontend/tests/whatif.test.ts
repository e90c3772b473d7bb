// The what-if loop: overrides flip E4 and the banner exactly as the
// service says, invalid input never reaches the network, and newer
// hypotheticals cancel older ones.

import { afterEach, describe, expect, it, vi } from 'vitest';

import { ApiClient } from '../src/api.js';
import { buildCaseViewModel, displayedStatuses } from '../src/viewmodel.js';
import { buildOverrides, emptyWhatIfInputs, validateWhatIf } from '../src/whatif.js';
import {
  jsonResponse,
  requestInstance2,
  submitInstance2,
  whatIfGusts3,
  whatIfVehicle,
} from './fixtures.js';

afterEach(() => {
  vi.unstubAllGlobals();
});

describe('what-if responses from the service', () => {
  it.each([
    ['gusts lowered to 3 m/s', { gusts: 3 }, whatIfGusts3()],
    ['vehicle swapped to DJI Mini 4 Pro', { vehicleModel: 'DJI Mini 4 Pro' }, whatIfVehicle()],
  ])('%s flips E4 to satisfied and the banner to admit', async (_label, overrides, fixture) => {
    const fetchMock = vi.fn(() => Promise.resolve(jsonResponse(fixture)));
    vi.stubGlobal('fetch', fetchMock);
    const client = new ApiClient('http://svc');
    const response = await client.whatIf(submitInstance2().requestId, overrides);

    const wind = response.instances.find((i) => i.templateId === 'wind-entry')!;
    const vm = buildCaseViewModel(wind, response.decision);
    expect(displayedStatuses(vm)['E4']).toBe('satisfied');
    expect(vm.banner.tone).toBe('admit');
    expect(vm.banner.hypothetical).toBe(true);

    // network-mock assertion: what the view shows is byte-identical to the
    // statuses in the (captured) service response
    const fromResponse = Object.fromEntries(wind.nodes.map((n) => [n.id, n.status]));
    expect(JSON.stringify(displayedStatuses(vm))).toBe(JSON.stringify(fromResponse));
  });
});

describe('input validation', () => {
  it('rejects a negative gust override without sending a request', async () => {
    const fetchMock = vi.fn();
    vi.stubGlobal('fetch', fetchMock);
    const inputs = { ...emptyWhatIfInputs(), gusts: '-2' };
    const errors = validateWhatIf(inputs);
    expect(errors).toHaveLength(1);
    expect(errors[0]!.field).toBe('gusts');
    expect(fetchMock).not.toHaveBeenCalled();
  });

  it('rejects junk visibility and precipitation', () => {
    expect(validateWhatIf({ ...emptyWhatIfInputs(), visibility: 'foggy' })).toHaveLength(1);
    expect(validateWhatIf({ ...emptyWhatIfInputs(), precipitation: 'hail' })).toHaveLength(1);
    expect(validateWhatIf({ ...emptyWhatIfInputs(), visibility: 'unlimited' })).toHaveLength(0);
  });

  it('builds overrides only from the fields that are set', () => {
    const overrides = buildOverrides({
      ...emptyWhatIfInputs(),
      gusts: '3',
      visibility: 'unlimited',
      vehicleModel: ' DJI Mini 4 Pro ',
    });
    expect(overrides).toEqual({
      gusts: 3,
      visibility: 'unlimited',
      vehicleModel: 'DJI Mini 4 Pro',
    });
  });
});

describe('single in-flight hypothetical', () => {
  it('a newer what-if aborts the older one', async () => {
    const seenSignals: AbortSignal[] = [];
    const fetchMock = vi.fn((_url: RequestInfo | URL, init?: RequestInit) => {
      seenSignals.push(init!.signal!);
      if (seenSignals.length === 1) {
        return new Promise<Response>(() => undefined); // first call never resolves
      }
      return Promise.resolve(jsonResponse(whatIfGusts3()));
    });
    vi.stubGlobal('fetch', fetchMock);
    const client = new ApiClient('http://svc');
    const first = client.whatIf('req-1', { gusts: 5 });
    const second = await client.whatIf('req-1', { gusts: 3 });
    expect(seenSignals[0]!.aborted).toBe(true);
    expect(seenSignals[1]!.aborted).toBe(false);
    expect(second.decision.verdict).toBe('admit');
    void first;
  });
});

describe('round-trip fidelity', () => {
  it('a form loaded from a stored request reproduces the payload byte for byte', async () => {
    const { buildPayload, formStateFromPayload } = await import('../src/form.js');
    const stored = requestInstance2();
    const rebuilt = buildPayload(formStateFromPayload(stored));
    expect(JSON.stringify(rebuilt)).toBe(JSON.stringify(stored));
  });
});
