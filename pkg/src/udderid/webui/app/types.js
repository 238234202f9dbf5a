/** Wire types shared with the annotation server, plus client-side
 * validation mirroring its rules (the UI can only emit schema-valid
 * annotations; the server re-validates on PUT). */
export const TEAT_POSITIONS = ['LF', 'RF', 'RR', 'LR'];
export const SLOT_ORDER = ['LF', 'RF', 'RR', 'LR', 'udder'];
/** Mirror of the server-side annotation rules. */
export function validateAnnotation(doc) {
    if (doc.udder_box.w <= 0 || doc.udder_box.h <= 0) {
        return { ok: false, code: 'non-positive-box', message: 'udder box dims must be > 0' };
    }
    const seen = new Set();
    for (const teat of doc.teats) {
        if (!TEAT_POSITIONS.includes(teat.position)) {
            return { ok: false, code: 'parse-error', message: `unknown position ${teat.position}` };
        }
        if (seen.has(teat.position)) {
            return { ok: false, code: 'duplicate-position', message: `position ${teat.position} repeated` };
        }
        seen.add(teat.position);
        if (teat.box.w <= 0 || teat.box.h <= 0) {
            return { ok: false, code: 'non-positive-box', message: `teat ${teat.position} box dims must be > 0` };
        }
    }
    const missing = TEAT_POSITIONS.filter((p) => !seen.has(p));
    if (missing.length > 0) {
        return { ok: false, code: 'missing-teat', message: `missing teat position(s) ${missing.join(', ')}` };
    }
    return { ok: true };
}
