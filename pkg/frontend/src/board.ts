// DOM renderer: paints a BoardModel into a grid of divs and reports clicks
// on playable cells.

import type { BoardModel } from "./view.js";

export type CellClickHandler = (x: number, y: number) => void;

export class BoardRenderer {
  private onClick: CellClickHandler | null = null;

  constructor(private readonly container: HTMLElement) {}

  setClickHandler(handler: CellClickHandler | null): void {
    this.onClick = handler;
  }

  render(model: BoardModel, animate: Set<string> | null = null): void {
    const doc = this.container.ownerDocument;
    this.container.textContent = "";
    this.container.style.setProperty("--cols", String(model.width));
    const grid = doc.createElement("div");
    grid.className = "board-grid";
    grid.style.gridTemplateColumns = `repeat(${model.width}, 1fr)`;
    for (const cell of model.cells) {
      const el = doc.createElement("div");
      el.className = `cell cell-${cell.kind}`;
      el.dataset.x = String(cell.x);
      el.dataset.y = String(cell.y);
      if (animate && animate.has(`${cell.x},${cell.y}`)) {
        el.classList.add("cell-fresh");
      }
      if (cell.kind === "legal" && model.playable && this.onClick) {
        el.classList.add("cell-clickable");
        const handler = this.onClick;
        el.addEventListener("click", () => handler(cell.x, cell.y));
      }
      grid.appendChild(el);
    }
    this.container.appendChild(grid);
  }

  /** Cell kinds as painted, for state-vs-DOM comparisons in tests. */
  paintedKinds(): Map<string, string> {
    const out = new Map<string, string>();
    const cells = this.container.querySelectorAll<HTMLElement>(".cell");
    cells.forEach((el) => {
      const kind = Array.from(el.classList)
        .find((c) => c.startsWith("cell-") && !["cell-fresh", "cell-clickable"].includes(c))!
        .slice("cell-".length);
      out.set(`${el.dataset.x},${el.dataset.y}`, kind);
    });
    return out;
  }
}
