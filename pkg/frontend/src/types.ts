/** Wire types mirroring the service's documented JSON contract. */

export type PairStatus = "candidate" | "accepted" | "rejected";

export interface Pair {
  id: string;
  clue: string;
  answer: string;
  source: string;
  status: PairStatus;
  origin_doc?: string;
}

export interface PuzzleEntry {
  num: number;
  clue: string;
  answer_id: string;
  len: number;
  row: number;
  col: number;
}

export interface CellNumber {
  row: number;
  col: number;
  num: number;
}

export interface Score {
  fw: number;
  ll: number;
  fr: number;
  lr: number;
  score: number;
}

export interface Puzzle {
  rows: number;
  cols: number;
  grid: string[][];
  numbers: CellNumber[];
  across: PuzzleEntry[];
  down: PuzzleEntry[];
  solution: string[][];
  score: Score;
  stop_reason: string;
}

export interface LayoutConfig {
  rows: number;
  cols: number;
  min_answers: number;
  min_fill_ratio: number;
  max_rebuilds: number;
  max_duration: number;
  seed: number;
}

export const DEFAULT_CONFIG: LayoutConfig = {
  rows: 13,
  cols: 13,
  min_answers: 2,
  min_fill_ratio: 1.0,
  max_rebuilds: 10,
  max_duration: 10.0,
  seed: 0,
};
