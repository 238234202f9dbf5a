/** Pointer-interaction state machine for the box editor.
 *
 * Operates purely in image coordinates (callers map screen→image through
 * the ViewTransform), so it is testable without a DOM. Drag on empty space
 * draws a new box into the next free slot; dragging inside a box moves it;
 * dragging a corner handle resizes; zero-area drags are discarded.
 */

import type { Point, ResizeHandle } from './coords.js';
import { hitHandle, rectContains, rectFromCorners, resizeRect } from './coords.js';
import type { AnnotationDraft, DraftBox } from './draft.js';
import type { BoxSlot, Rect } from './types.js';

type Interaction =
  | { kind: 'idle' }
  | { kind: 'drawing'; anchor: Point; current: Point }
  | { kind: 'moving'; slot: BoxSlot; last: Point }
  | { kind: 'resizing'; slot: BoxSlot; handle: ResizeHandle };

/** Zero-area drags are discarded; drags with every slot occupied are
 * rejected (the app surfaces a visible message for those). */
export type DrawOutcome =
  | { kind: 'drawn'; slot: BoxSlot }
  | { kind: 'discarded' }
  | { kind: 'rejected-full' }
  | { kind: 'none' };

export class EditorState {
  draft: AnnotationDraft;
  selected: BoxSlot | null = null;
  private interaction: Interaction = { kind: 'idle' };

  constructor(draft: AnnotationDraft) {
    this.draft = draft;
  }

  /** Topmost box at a point: smallest area wins (teats sit inside udder). */
  pick(p: Point): DraftBox | null {
    let best: DraftBox | null = null;
    for (const b of this.draft.boxes) {
      if (!rectContains(b.rect, p)) continue;
      if (best === null || b.rect.w * b.rect.h < best.rect.w * best.rect.h) {
        best = b;
      }
    }
    return best;
  }

  /** `handleRadius` is in image pixels (caller divides by zoom scale). */
  pointerDown(p: Point, handleRadius: number): void {
    if (this.selected !== null) {
      const sel = this.draft.box(this.selected);
      if (sel) {
        const handle = hitHandle(sel.rect, p, handleRadius);
        if (handle !== null) {
          this.interaction = { kind: 'resizing', slot: this.selected, handle };
          return;
        }
      }
    }
    const hit = this.pick(p);
    if (hit !== null) {
      this.selected = hit.slot;
      this.interaction = { kind: 'moving', slot: hit.slot, last: p };
      return;
    }
    this.selected = null;
    this.interaction = { kind: 'drawing', anchor: p, current: p };
  }

  pointerMove(p: Point): void {
    const it = this.interaction;
    switch (it.kind) {
      case 'drawing':
        it.current = p;
        break;
      case 'moving':
        this.draft.moveBox(it.slot, p.x - it.last.x, p.y - it.last.y);
        it.last = p;
        break;
      case 'resizing': {
        const b = this.draft.box(it.slot);
        if (b) this.draft.setRect(it.slot, resizeRect(b.rect, it.handle, p));
        break;
      }
      case 'idle':
        break;
    }
  }

  /** Outcome of releasing the pointer after a drawing gesture. */
  pointerUp(p: Point): DrawOutcome {
    const it = this.interaction;
    this.interaction = { kind: 'idle' };
    if (it.kind !== 'drawing') return { kind: 'none' };
    const rect = rectFromCorners(it.anchor, p);
    if (rect.w <= 0 || rect.h <= 0) return { kind: 'discarded' };
    const slot = this.draft.addBox(rect);
    if (slot === null) return { kind: 'rejected-full' };
    this.selected = slot;
    return { kind: 'drawn', slot };
  }

  /** Rubber-band rect while drawing, for rendering. */
  pendingRect(): Rect | null {
    const it = this.interaction;
    if (it.kind !== 'drawing') return null;
    return rectFromCorners(it.anchor, it.current);
  }

  /** Assign the selected box to a slot (swapping if occupied). */
  assignSelected(slot: BoxSlot): boolean {
    if (this.selected === null) return false;
    const moved = this.draft.reassign(this.selected, slot);
    if (moved) this.selected = slot;
    return moved;
  }

  deleteSelected(): void {
    if (this.selected === null) return;
    this.draft.deleteBox(this.selected);
    this.selected = null;
  }
}
