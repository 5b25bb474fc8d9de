// @vitest-environment jsdom
//
// Scripted browser test against the real service: triage exclusion is
// reflected by the trends endpoint, merging clusters appends one
// curation-log entry, and the scheme editor's live preview equals the
// query the service compiles.

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ReviewApi } from "../src/api.js";
import { parseGroups } from "../src/state.js";
import { ClustersView } from "../src/views/clusters.js";
import { SchemeView } from "../src/views/scheme.js";
import { TriageView } from "../src/views/triage.js";
import { startService, type Harness } from "./service-harness.js";

let harness: Harness;
let api: ReviewApi;
const PROJECT = "oncology-demo";

beforeAll(async () => {
  harness = await startService();
  api = new ReviewApi(harness.base);
}, 90_000);

afterAll(() => {
  harness?.stop();
});

function mount(): HTMLElement {
  const root = document.createElement("div");
  document.body.appendChild(root);
  return root;
}

async function until<T>(probe: () => Promise<T>, ok: (value: T) => boolean): Promise<T> {
  const deadline = Date.now() + 15_000;
  for (;;) {
    const value = await probe();
    if (ok(value)) return value;
    if (Date.now() > deadline) return value;
    await new Promise((r) => setTimeout(r, 150));
  }
}

describe("demo project over the live service", () => {
  it("loads the demo pool with the expected triage banner", async () => {
    const data = await api.getPapers(PROJECT);
    expect(data.papers).toHaveLength(92);
    expect(data.counts).toEqual({
      unreviewed: 0,
      included: 55,
      excluded: 25,
      included_general: 12,
    });
  });

  it("excluding a paper in the triage view removes it from trends", async () => {
    const before = await api.getTrends(PROJECT);
    const class3Before = Object.values(before.clusters).find((c) => c.label === "Class 3")!;
    expect(class3Before.all_time?.papers).toBe(4);

    const root = mount();
    const view = new TriageView(api, PROJECT, root, () => {});
    await view.load();
    // the only Class 3 paper from 2022
    const button = root.querySelector<HTMLButtonElement>(
      'button[data-status="excluded"][data-eid="2-s2.0-85121330341"]',
    );
    expect(button).not.toBeNull();
    button!.click();

    const after = await until(
      () => api.getTrends(PROJECT),
      (trends) =>
        Object.values(trends.clusters).find((c) => c.label === "Class 3")!.all_time
          ?.papers === 3,
    );
    const class3After = Object.values(after.clusters).find((c) => c.label === "Class 3")!;
    expect(class3After.all_time?.papers).toBe(3);

    // restore for the remaining tests
    await api.setCuration(PROJECT, "2-s2.0-85121330341", "included");
  }, 30_000);

  it("merging two clusters appends exactly one curation-log entry", async () => {
    const logBefore = (await api.getCurationLog(PROJECT)).entries.length;
    const root = mount();
    const view = new ClustersView(api, PROJECT, root, () => {});
    await view.load();

    const boxes = root.querySelectorAll<HTMLInputElement>("input[data-pick]");
    expect(boxes.length).toBeGreaterThanOrEqual(2);
    const pickedIds = [boxes[0].dataset.pick!, boxes[1].dataset.pick!];
    boxes[0].checked = true;
    boxes[0].dispatchEvent(new Event("change"));
    const boxesAgain = root.querySelectorAll<HTMLInputElement>("input[data-pick]");
    const second = [...boxesAgain].find((b) => b.dataset.pick === pickedIds[1])!;
    second.checked = true;
    second.dispatchEvent(new Event("change"));

    const merge = root.querySelector<HTMLButtonElement>("#cluster-merge")!;
    expect(merge.disabled).toBe(false);
    merge.click();

    const entries = await until(
      () => api.getCurationLog(PROJECT).then((log) => log.entries),
      (log) => log.length === logBefore + 1,
    );
    expect(entries.length).toBe(logBefore + 1);
    const last = entries[entries.length - 1] as { kind: string; edit?: { op?: string } };
    expect(last.kind).toBe("cluster_edit");
    expect(last.edit?.op).toBe("merge");

    const clusters = (await api.getClusters(PROJECT)).clusters;
    expect(clusters.some((c) => c.curated && !pickedIds.includes(c.id))).toBe(true);
  }, 30_000);

  it("scheme editor live preview equals the service-compiled query", async () => {
    const project = await api.getProject(PROJECT);
    const root = mount();
    const view = new SchemeView(api, PROJECT, root, () => {});
    await view.load();

    // untouched scheme: preview shows the project's stored compiled query
    expect(root.querySelector("#query-preview")!.textContent).toBe(project.query);

    // add a level-2 variant and refresh the preview
    const cell = root.querySelector<HTMLTextAreaElement>("#cell-solution-2")!;
    cell.value = "image processing OR computer vision";
    await view.refreshPreview();
    const shown = root.querySelector("#query-preview")!.textContent!;

    const expected = await api.previewQuery({
      ...project.scheme,
      solution_l2: parseGroups(cell.value),
    });
    expect(shown).toBe(expected.query);
    expect(shown).toContain('"image processing" OR "computer vision"');
  }, 30_000);

  it("serves the built UI bundle at the root", async () => {
    const resp = await fetch(`${harness.base}/`);
    expect(resp.status).toBe(200);
    const html = await resp.text();
    expect(html).toContain("litscout review");
  });
});
