/** Wire types shared with the annotation server, plus client-side
 * validation mirroring its rules (the UI can only emit schema-valid
 * annotations; the server re-validates on PUT). */

export type TeatPosition = 'LF' | 'RF' | 'RR' | 'LR';

export const TEAT_POSITIONS: TeatPosition[] = ['LF', 'RF', 'RR', 'LR'];

/** Slot a drawn box can occupy; assignment order is LF→RF→RR→LR→udder. */
export type BoxSlot = TeatPosition | 'udder';

export const SLOT_ORDER: BoxSlot[] = ['LF', 'RF', 'RR', 'LR', 'udder'];

export interface Rect {
  x: number;
  y: number;
  w: number;
  h: number;
}

/** GET /api/frames entry. */
export interface FrameInfo {
  id: string;
  cow_id: string;
  day: number;
  collection: number;
  has_image: boolean;
  annotated: boolean;
}

/** Annotation document, exactly the server's JSON schema. */
export interface AnnotationDoc {
  schema: 1;
  image: string;
  udder_box: Rect;
  teats: { position: TeatPosition; box: Rect }[];
}

export type ValidationResult =
  | { ok: true }
  | { ok: false; code: string; message: string };

/** Mirror of the server-side annotation rules. */
export function validateAnnotation(doc: AnnotationDoc): ValidationResult {
  if (doc.udder_box.w <= 0 || doc.udder_box.h <= 0) {
    return { ok: false, code: 'non-positive-box', message: 'udder box dims must be > 0' };
  }
  const seen = new Set<string>();
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
