// Thin client over the documented service endpoints. The base URL is the
// console's only configuration. What-if calls keep at most one request in
// flight: a newer call aborts the older one.

import type {
  RequestPayload,
  SubmitResponse,
  TemplateSummary,
  WhatIfOverrides,
  WhatIfResponse,
} from './types.js';

export class ServiceError extends Error {
  constructor(
    public status: number,
    public body: { error?: string; violations?: string[] } | null,
  ) {
    super(body?.error ?? `service returned ${status}`);
  }
}

async function parseJson(response: Response): Promise<unknown> {
  try {
    return await response.json();
  } catch {
    return null;
  }
}

export class ApiClient {
  private whatIfController: AbortController | null = null;

  constructor(public baseUrl: string = '') {}

  private url(path: string): string {
    return `${this.baseUrl}${path}`;
  }

  async submitRequest(payload: RequestPayload): Promise<SubmitResponse> {
    const response = await fetch(this.url('/requests'), {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(payload),
    });
    if (!response.ok) {
      throw new ServiceError(response.status, (await parseJson(response)) as never);
    }
    return (await response.json()) as SubmitResponse;
  }

  async whatIf(requestId: string, overrides: WhatIfOverrides): Promise<WhatIfResponse> {
    // later submissions cancel earlier ones: only one hypothetical at a time
    this.whatIfController?.abort();
    const controller = new AbortController();
    this.whatIfController = controller;
    const response = await fetch(this.url(`/requests/${requestId}/what-if`), {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(overrides),
      signal: controller.signal,
    });
    if (this.whatIfController === controller) {
      this.whatIfController = null;
    }
    if (!response.ok) {
      throw new ServiceError(response.status, (await parseJson(response)) as never);
    }
    return (await response.json()) as WhatIfResponse;
  }

  async getRequest(requestId: string): Promise<RequestPayload> {
    const response = await fetch(this.url(`/requests/${requestId}`));
    if (!response.ok) {
      throw new ServiceError(response.status, (await parseJson(response)) as never);
    }
    return (await response.json()) as RequestPayload;
  }

  async listTemplates(): Promise<TemplateSummary[]> {
    const response = await fetch(this.url('/templates'));
    if (!response.ok) {
      throw new ServiceError(response.status, (await parseJson(response)) as never);
    }
    return (await response.json()) as TemplateSummary[];
  }
}
