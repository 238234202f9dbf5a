/** Fetch client for the annotation server API. */

import type { AnnotationDoc, FrameInfo } from './types.js';

export class ApiError extends Error {
  readonly status: number;
  readonly code: string | null;

  constructor(status: number, message: string, code: string | null = null) {
    super(message);
    this.status = status;
    this.code = code;
  }
}

async function errorFrom(resp: Response): Promise<ApiError> {
  let message = `${resp.status} ${resp.statusText}`;
  let code: string | null = null;
  try {
    const body = await resp.json();
    if (body && typeof body.error === 'string') message = body.error;
    if (body && typeof body.code === 'string') code = body.code;
  } catch {
    // non-JSON error body; keep the status line
  }
  return new ApiError(resp.status, message, code);
}

export class AnnotationApi {
  readonly base: string;

  constructor(base = '') {
    this.base = base;
  }

  async listFrames(): Promise<FrameInfo[]> {
    const resp = await fetch(`${this.base}/api/frames`);
    if (!resp.ok) throw await errorFrom(resp);
    return (await resp.json()) as FrameInfo[];
  }

  imageUrl(frameId: string): string {
    return `${this.base}/api/frames/${frameId}/image`;
  }

  /** Stored annotation, or null when the frame is not annotated yet. */
  async getAnnotation(frameId: string): Promise<AnnotationDoc | null> {
    const resp = await fetch(`${this.base}/api/frames/${frameId}/annotation`);
    if (resp.status === 404) return null;
    if (!resp.ok) throw await errorFrom(resp);
    return (await resp.json()) as AnnotationDoc;
  }

  /** PUT the annotation; resolves to the server's echo of what it stored. */
  async putAnnotation(frameId: string, doc: AnnotationDoc): Promise<AnnotationDoc> {
    const resp = await fetch(`${this.base}/api/frames/${frameId}/annotation`, {
      method: 'PUT',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(doc),
    });
    if (!resp.ok) throw await errorFrom(resp);
    return (await resp.json()) as AnnotationDoc;
  }
}
