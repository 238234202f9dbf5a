import { describe, expect, it } from 'vitest';
import {
  hitHandle,
  rectContains,
  rectFromCorners,
  resizeRect,
  ViewTransform,
} from '../src/coords.js';

describe('ViewTransform', () => {
  it('is the identity by default', () => {
    const view = new ViewTransform();
    expect(view.screenToImage({ x: 10, y: 10 })).toEqual({ x: 10, y: 10 });
    expect(view.imageToScreen({ x: 3, y: 4 })).toEqual({ x: 3, y: 4 });
  });

  it('maps a drag to identical image coords regardless of zoom', () => {
    // drag (10,10)->(30,50) at 1:1 equals the same gesture at 2x zoom
    const at1 = new ViewTransform();
    const a1 = at1.screenToImage({ x: 10, y: 10 });
    const b1 = at1.screenToImage({ x: 30, y: 50 });

    const at2 = new ViewTransform();
    at2.scale = 2;
    const a2 = at2.screenToImage({ x: 20, y: 20 });
    const b2 = at2.screenToImage({ x: 60, y: 100 });

    expect(rectFromCorners(a2, b2)).toEqual(rectFromCorners(a1, b1));
    expect(rectFromCorners(a1, b1)).toEqual({ x: 10, y: 10, w: 20, h: 40 });
  });

  it('round-trips screen -> image -> screen', () => {
    const view = new ViewTransform();
    view.scale = 2.5;
    view.offsetX = -37;
    view.offsetY = 11;
    const p = { x: 123, y: 456 };
    const back = view.imageToScreen(view.screenToImage(p));
    expect(back.x).toBeCloseTo(p.x, 10);
    expect(back.y).toBeCloseTo(p.y, 10);
  });

  it('zoomAt keeps the anchor point fixed', () => {
    const view = new ViewTransform();
    view.scale = 1.5;
    view.offsetX = 20;
    view.offsetY = -5;
    const anchor = { x: 200, y: 150 };
    const before = view.screenToImage(anchor);
    view.zoomAt(anchor, 1.3);
    const after = view.screenToImage(anchor);
    expect(after.x).toBeCloseTo(before.x, 9);
    expect(after.y).toBeCloseTo(before.y, 9);
  });

  it('zoomAt clamps to the allowed range', () => {
    const view = new ViewTransform();
    view.zoomAt({ x: 0, y: 0 }, 1e9);
    expect(view.scale).toBe(32);
    view.zoomAt({ x: 0, y: 0 }, 1e-12);
    expect(view.scale).toBe(0.1);
  });

  it('fit centers the image in the viewport', () => {
    const view = new ViewTransform();
    view.fit(400, 400, 800, 400);
    expect(view.scale).toBe(1);
    expect(view.offsetX).toBe(200);
    expect(view.offsetY).toBe(0);
  });
});

describe('rect helpers', () => {
  it('normalizes any drag direction', () => {
    expect(rectFromCorners({ x: 30, y: 50 }, { x: 10, y: 10 }))
      .toEqual({ x: 10, y: 10, w: 20, h: 40 });
  });

  it('containment includes edges', () => {
    const r = { x: 0, y: 0, w: 10, h: 10 };
    expect(rectContains(r, { x: 0, y: 0 })).toBe(true);
    expect(rectContains(r, { x: 10, y: 10 })).toBe(true);
    expect(rectContains(r, { x: 10.01, y: 5 })).toBe(false);
  });

  it('hits the nearest corner handle within the radius', () => {
    const r = { x: 10, y: 10, w: 20, h: 20 };
    expect(hitHandle(r, { x: 9, y: 11 }, 3)).toBe('nw');
    expect(hitHandle(r, { x: 30, y: 30 }, 3)).toBe('se');
    expect(hitHandle(r, { x: 20, y: 20 }, 3)).toBeNull();
  });

  it('resizes against the fixed opposite corner', () => {
    const r = { x: 10, y: 10, w: 20, h: 20 };
    expect(resizeRect(r, 'se', { x: 40, y: 35 }))
      .toEqual({ x: 10, y: 10, w: 30, h: 25 });
    // dragging nw past se flips cleanly
    expect(resizeRect(r, 'nw', { x: 50, y: 50 }))
      .toEqual({ x: 30, y: 30, w: 20, h: 20 });
  });
});
