import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { App } from "../src/app.js";
import type { Pair, Puzzle } from "../src/types.js";
import { StubService } from "./stubService.js";

import pairsFixture from "./fixtures/pairs.json";
import puzzleFixture from "./fixtures/puzzle.json";

const PAIRS = pairsFixture as Pair[];
const ACCEPT_IDS = ["p1", "p4", "p5", "p6", "p7", "p8", "p9", "p10"];

beforeEach(() => {
  document.body.innerHTML = "";
  location.hash = "";
});

describe("thin-client contract", () => {
  it("displays a tampered score verbatim, computing nothing locally", async () => {
    const tampered = JSON.parse(JSON.stringify(puzzleFixture)) as Puzzle;
    tampered.score.score = 9999.125; // impossible for fw/ll/fr/lr below it
    const stub = new StubService(PAIRS, tampered);

    const root = document.createElement("div");
    document.body.appendChild(root);
    const app = new App(new ApiClient("http://svc", stub.fetch), root);
    await app.start();
    await app.runPipeline("فقرة", "ar");
    for (const id of ACCEPT_IDS) await app.review(id, "accepted");
    app.state.config.min_answers = 8;
    await app.generate();

    const line = root.querySelector(".score-line")!;
    expect(line.textContent).toContain("9999.125");
    // The untampered components are still shown as sent.
    expect(line.textContent).toContain(`words ${tampered.score.fw}`);
  });

  it("renders exactly the clues the service sent, even if mislabeled", async () => {
    const tampered = JSON.parse(JSON.stringify(puzzleFixture)) as Puzzle;
    tampered.across[0].clue = "نص مزروع من الخادم";
    const stub = new StubService(PAIRS, tampered);

    const root = document.createElement("div");
    document.body.appendChild(root);
    const app = new App(new ApiClient("http://svc", stub.fetch), root);
    await app.start();
    await app.runPipeline("فقرة", "ar");
    for (const id of ACCEPT_IDS) await app.review(id, "accepted");
    app.state.config.min_answers = 8;
    await app.generate();

    expect(root.querySelector(".clues")!.textContent).toContain("نص مزروع من الخادم");
  });
});
