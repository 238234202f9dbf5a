/** Canvas rendering of the frame image, boxes, handles, and labels. */
import { HANDLES, handlePoint } from './coords.js';
export const SLOT_COLORS = {
    LF: '#4fc3f7',
    RF: '#81c784',
    RR: '#ffb74d',
    LR: '#f06292',
    udder: '#b39ddb',
};
const HANDLE_SCREEN_PX = 5;
export function drawScene(ctx, view, image, editor) {
    const canvas = ctx.canvas;
    ctx.setTransform(1, 0, 0, 1, 0, 0);
    ctx.fillStyle = '#181818';
    ctx.fillRect(0, 0, canvas.width, canvas.height);
    ctx.setTransform(view.scale, 0, 0, view.scale, view.offsetX, view.offsetY);
    ctx.imageSmoothingEnabled = view.scale < 1;
    if (image !== null) {
        ctx.drawImage(image, 0, 0);
    }
    for (const box of editor.draft.boxes) {
        strokeBox(ctx, view, box.rect, SLOT_COLORS[box.slot], box.slot === editor.selected);
        labelBox(ctx, view, box.rect, box.slot);
    }
    const pending = editor.pendingRect();
    if (pending !== null) {
        ctx.save();
        ctx.setLineDash([6 / view.scale, 4 / view.scale]);
        strokeBox(ctx, view, pending, '#eeeeee', false);
        ctx.restore();
    }
}
function strokeBox(ctx, view, rect, color, selected) {
    ctx.lineWidth = (selected ? 3 : 1.5) / view.scale;
    ctx.strokeStyle = color;
    ctx.strokeRect(rect.x, rect.y, rect.w, rect.h);
    if (selected) {
        const r = HANDLE_SCREEN_PX / view.scale;
        ctx.fillStyle = color;
        for (const handle of HANDLES) {
            const p = handlePoint(rect, handle);
            ctx.fillRect(p.x - r, p.y - r, 2 * r, 2 * r);
        }
    }
}
function labelBox(ctx, view, rect, slot) {
    ctx.font = `${12 / view.scale}px sans-serif`;
    ctx.fillStyle = SLOT_COLORS[slot];
    ctx.fillText(slot, rect.x + 3 / view.scale, rect.y - 4 / view.scale);
}
