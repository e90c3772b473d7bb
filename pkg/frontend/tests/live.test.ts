// Optional integration run against a real service:
//   SAFESPLE_SERVICE_URL=http://127.0.0.1:8000 vitest run tests/live.test.ts
// Skipped when the variable is not set, so the normal suite stays offline.

import { describe, expect, it } from 'vitest';

import { ApiClient } from '../src/api.js';
import { buildCaseViewModel, displayedStatuses } from '../src/viewmodel.js';
import { requestInstance2 } from './fixtures.js';

const base = process.env.SAFESPLE_SERVICE_URL;

describe.skipIf(!base)('against a running service', () => {
  it('submits instance 2 and flips E4 through both what-if overrides', async () => {
    const client = new ApiClient(base!);
    const submitted = await client.submitRequest(requestInstance2());
    expect(submitted.decision.verdict).toBe('deny');

    for (const overrides of [{ gusts: 3 }, { vehicleModel: 'DJI Mini 4 Pro' }]) {
      const response = await client.whatIf(submitted.requestId, overrides);
      const wind = response.instances.find((i) => i.templateId === 'wind-entry')!;
      const vm = buildCaseViewModel(wind, response.decision);
      expect(displayedStatuses(vm)['E4']).toBe('satisfied');
      expect(vm.banner.tone).toBe('admit');
      const fromResponse = Object.fromEntries(wind.nodes.map((n) => [n.id, n.status]));
      expect(JSON.stringify(displayedStatuses(vm))).toBe(JSON.stringify(fromResponse));
    }
  });
});
