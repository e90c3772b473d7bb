// Captured service responses (see ../../.claude/skills/verify/SKILL.md for
// the capture recipe). These are real documents from the running service,
// so byte-match assertions against them are network-faithful.

import { readFileSync } from 'node:fs';

import type { RequestPayload, SubmitResponse, WhatIfResponse } from '../src/types.js';

function load<T>(name: string): T {
  const url = new URL(`./fixtures/${name}.json`, import.meta.url);
  return JSON.parse(readFileSync(url, 'utf-8')) as T;
}

export const submitInstance1 = (): SubmitResponse => load('submit_instance1');
export const submitInstance2 = (): SubmitResponse => load('submit_instance2');
export const whatIfGusts3 = (): WhatIfResponse => load('whatif_gusts3');
export const whatIfVehicle = (): WhatIfResponse => load('whatif_vehicle');
export const requestInstance2 = (): RequestPayload => load('request_instance2');

export function jsonResponse(doc: unknown, status = 200): Response {
  return new Response(JSON.stringify(doc), {
    status,
    headers: { 'Content-Type': 'application/json' },
  });
}
