/** Grid preview and clue lists, built straight from the puzzle JSON.
 *
 * Display mirroring matches the service's SVG: internal column c renders
 * at display column (cols - 1 - c), so across answers read right to left.
 * The letters shown are exactly the service's `solution` matrix; this
 * module computes no crossword logic of its own.
 */

import type { Puzzle, PuzzleEntry } from "./types.js";

export function renderGrid(puzzle: Puzzle, reveal: boolean): HTMLElement {
  const wrap = document.createElement("div");
  wrap.className = "grid";
  wrap.style.gridTemplateColumns = `repeat(${puzzle.cols}, 2.1em)`;

  const numberAt = new Map<string, number>();
  for (const n of puzzle.numbers) {
    numberAt.set(`${n.row},${n.col}`, n.num);
  }

  for (let r = 0; r < puzzle.rows; r++) {
    for (let d = 0; d < puzzle.cols; d++) {
      const c = puzzle.cols - 1 - d; // internal column at this display slot
      const cell = document.createElement("div");
      cell.dataset.row = String(r);
      cell.dataset.col = String(c);
      const solution = puzzle.solution[r][c];
      if (solution === "#") {
        cell.className = "cell block";
      } else {
        cell.className = "cell letter";
        const num = numberAt.get(`${r},${c}`);
        if (num !== undefined) {
          const badge = document.createElement("span");
          badge.className = "num";
          badge.textContent = String(num);
          cell.appendChild(badge);
        }
        const glyph = document.createElement("span");
        glyph.className = "glyph";
        glyph.textContent = reveal ? solution : "";
        cell.appendChild(glyph);
      }
      wrap.appendChild(cell);
    }
  }
  return wrap;
}

function clueList(title: string, entries: PuzzleEntry[]): HTMLElement {
  const box = document.createElement("div");
  box.className = "clue-box";
  const heading = document.createElement("h3");
  heading.textContent = title;
  box.appendChild(heading);
  const list = document.createElement("ol");
  for (const entry of entries) {
    const item = document.createElement("li");
    item.value = entry.num;
    item.textContent = `${entry.clue} (${entry.len})`;
    item.dataset.answerId = entry.answer_id;
    list.appendChild(item);
  }
  box.appendChild(list);
  return box;
}

export function renderClues(puzzle: Puzzle): HTMLElement {
  const wrap = document.createElement("div");
  wrap.className = "clues";
  wrap.appendChild(clueList("أفقي", puzzle.across));
  wrap.appendChild(clueList("عمودي", puzzle.down));
  return wrap;
}

export function renderScoreLine(puzzle: Puzzle): HTMLElement {
  const line = document.createElement("p");
  line.className = "score-line";
  // Values are echoed verbatim from the service response.
  line.textContent =
    `score ${puzzle.score.score} · words ${puzzle.score.fw} · ` +
    `linked ${puzzle.score.ll} · stop: ${puzzle.stop_reason}`;
  return line;
}
