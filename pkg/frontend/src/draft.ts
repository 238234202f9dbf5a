/** Annotation draft under edit: at most one box per slot, save enabled only
 * when all four teats plus the udder box exist with positive dims. */

import type { AnnotationDoc, BoxSlot, Rect, TeatPosition } from './types.js';
import { SLOT_ORDER, TEAT_POSITIONS, validateAnnotation } from './types.js';

export interface DraftBox {
  slot: BoxSlot;
  rect: Rect;
}

export class AnnotationDraft {
  readonly frameId: string;
  boxes: DraftBox[] = [];
  dirty = false;

  constructor(frameId: string) {
    this.frameId = frameId;
  }

  static fromDoc(frameId: string, doc: AnnotationDoc): AnnotationDraft {
    const draft = new AnnotationDraft(frameId);
    for (const teat of doc.teats) {
      draft.boxes.push({ slot: teat.position, rect: { ...teat.box } });
    }
    draft.boxes.push({ slot: 'udder', rect: { ...doc.udder_box } });
    return draft;
  }

  box(slot: BoxSlot): DraftBox | undefined {
    return this.boxes.find((b) => b.slot === slot);
  }

  /** First slot in LF→RF→RR→LR→udder order without a box. */
  nextFreeSlot(): BoxSlot | null {
    for (const slot of SLOT_ORDER) {
      if (!this.box(slot)) return slot;
    }
    return null;
  }

  /** Add a drawn rect to the next free slot. Zero-area rects are discarded;
   * returns the slot used, or null if discarded/rejected (all slots full). */
  addBox(rect: Rect): BoxSlot | null {
    if (rect.w <= 0 || rect.h <= 0) return null;
    const slot = this.nextFreeSlot();
    if (slot === null) return null;
    this.boxes.push({ slot, rect });
    this.dirty = true;
    return slot;
  }

  /** Re-assign a box to a slot; if the slot is taken, the two boxes swap. */
  reassign(from: BoxSlot, to: BoxSlot): boolean {
    const source = this.box(from);
    if (!source || from === to) return false;
    const target = this.box(to);
    source.slot = to;
    if (target) target.slot = from;
    this.dirty = true;
    return true;
  }

  moveBox(slot: BoxSlot, dx: number, dy: number): void {
    const b = this.box(slot);
    if (!b) return;
    b.rect = { ...b.rect, x: b.rect.x + dx, y: b.rect.y + dy };
    this.dirty = true;
  }

  setRect(slot: BoxSlot, rect: Rect): void {
    const b = this.box(slot);
    if (!b) return;
    b.rect = rect;
    this.dirty = true;
  }

  deleteBox(slot: BoxSlot): void {
    const before = this.boxes.length;
    this.boxes = this.boxes.filter((b) => b.slot !== slot);
    if (this.boxes.length !== before) this.dirty = true;
  }

  /** All four teats + udder present with positive dims. */
  isComplete(): boolean {
    return (
      SLOT_ORDER.every((slot) => {
        const b = this.box(slot);
        return b !== undefined && b.rect.w > 0 && b.rect.h > 0;
      })
    );
  }

  /** Serialize to the server schema; caller must check isComplete first. */
  toDoc(imageRef: string): AnnotationDoc {
    const udder = this.box('udder');
    if (!udder) throw new Error('draft incomplete: no udder box');
    const teats = TEAT_POSITIONS.map((p: TeatPosition) => {
      const b = this.box(p);
      if (!b) throw new Error(`draft incomplete: no ${p} box`);
      return { position: p, box: { ...b.rect } };
    });
    const doc: AnnotationDoc = {
      schema: 1,
      image: imageRef,
      udder_box: { ...udder.rect },
      teats,
    };
    const check = validateAnnotation(doc);
    if (!check.ok) throw new Error(`${check.code}: ${check.message}`);
    return doc;
  }
}
