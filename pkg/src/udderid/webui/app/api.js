/** Fetch client for the annotation server API. */
export class ApiError extends Error {
    constructor(status, message, code = null) {
        super(message);
        this.status = status;
        this.code = code;
    }
}
async function errorFrom(resp) {
    let message = `${resp.status} ${resp.statusText}`;
    let code = null;
    try {
        const body = await resp.json();
        if (body && typeof body.error === 'string')
            message = body.error;
        if (body && typeof body.code === 'string')
            code = body.code;
    }
    catch {
        // non-JSON error body; keep the status line
    }
    return new ApiError(resp.status, message, code);
}
export class AnnotationApi {
    constructor(base = '') {
        this.base = base;
    }
    async listFrames() {
        const resp = await fetch(`${this.base}/api/frames`);
        if (!resp.ok)
            throw await errorFrom(resp);
        return (await resp.json());
    }
    imageUrl(frameId) {
        return `${this.base}/api/frames/${frameId}/image`;
    }
    /** Stored annotation, or null when the frame is not annotated yet. */
    async getAnnotation(frameId) {
        const resp = await fetch(`${this.base}/api/frames/${frameId}/annotation`);
        if (resp.status === 404)
            return null;
        if (!resp.ok)
            throw await errorFrom(resp);
        return (await resp.json());
    }
    /** PUT the annotation; resolves to the server's echo of what it stored. */
    async putAnnotation(frameId, doc) {
        const resp = await fetch(`${this.base}/api/frames/${frameId}/annotation`, {
            method: 'PUT',
            headers: { 'Content-Type': 'application/json' },
            body: JSON.stringify(doc),
        });
        if (!resp.ok)
            throw await errorFrom(resp);
        return (await resp.json());
    }
}
