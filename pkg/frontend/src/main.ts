// DOM wiring for the review page. All state lives in ReviewSession (and
// the service); this file only renders it and forwards events.

import { ApiClient } from "./api.js";
import { ReviewController } from "./controller.js";
import { actionForKey } from "./keyboard.js";
import { CATEGORY_SUGGESTIONS, WordDetail } from "./types.js";

const api = new ApiClient("");
let controller: ReviewController | null = null;
let detailCache: WordDetail | null = null;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function fmt(value: number): string {
  // served values are shown as-is; only long floats get trimmed for width
  const text = String(value);
  return text.length > 10 ? value.toPrecision(6) : text;
}

async function boot(): Promise<void> {
  const metricSelect = el<HTMLSelectElement>("metric");
  const metrics = await api.getMetrics();
  metricSelect.innerHTML = metrics
    .map((m) => `<option value="${m.metric}">${m.metric} (${m.size})</option>`)
    .join("");
  const datalist = el<HTMLDataListElement>("category-options");
  datalist.innerHTML = CATEGORY_SUGGESTIONS.map((c) => `<option value="${c}">`).join("");

  metricSelect.addEventListener("change", () => void openRanking());
  el<HTMLInputElement>("annotator").addEventListener("change", () => void openRanking());
  el<HTMLInputElement>("hide-toponyms").addEventListener("change", () => toggle("hideToponyms"));
  el<HTMLInputElement>("hide-annotated").addEventListener("change", () => toggle("hideAnnotated"));
  document.addEventListener("keydown", onKey);
  await openRanking();
}

async function openRanking(): Promise<void> {
  const metric = el<HTMLSelectElement>("metric").value;
  const annotator = el<HTMLInputElement>("annotator").value.trim() || "anon";
  controller = await ReviewController.start(api, metric, annotator);
  controller.session.filters.hideToponyms = el<HTMLInputElement>("hide-toponyms").checked;
  controller.session.filters.hideAnnotated = el<HTMLInputElement>("hide-annotated").checked;
  render();
  await renderDetail();
}

function toggle(name: "hideToponyms" | "hideAnnotated"): void {
  if (!controller) return;
  controller.session.toggleFilter(name);
  render();
  void renderDetail();
}

function onKey(event: KeyboardEvent): void {
  if (!controller) return;
  const target = event.target as HTMLElement;
  if (target instanceof HTMLInputElement || target instanceof HTMLTextAreaElement) return;
  const action = actionForKey(event.key);
  if (!action) return;
  event.preventDefault();
  if (action.kind === "move") {
    controller.session.move(action.delta);
    render();
    void renderDetail();
  } else if (action.kind === "toggle") {
    const box = action.filter === "hideToponyms" ? "hide-toponyms" : "hide-annotated";
    const input = el<HTMLInputElement>(box);
    input.checked = !input.checked;
    toggle(action.filter);
  } else {
    const category = el<HTMLInputElement>("category").value.trim() || null;
    const note = el<HTMLTextAreaElement>("note").value.trim() || null;
    void controller.labelCurrentAndAdvance(action.label, category, note).then(() => {
      el<HTMLInputElement>("category").value = "";
      el<HTMLTextAreaElement>("note").value = "";
      render();
      void renderDetail();
    });
  }
}

function render(): void {
  if (!controller) return;
  const session = controller.session;
  const progress = session.progress();
  el("progress").textContent = `${progress.annotated}/${progress.scope} annotated`;
  el("error").textContent = controller.lastError ?? "";

  const rows = session.visible().map((entry, index) => {
    const classes = ["row"];
    if (index === session.cursor) classes.push("cursor");
    if (entry.toponym) classes.push("toponym");
    const badge =
      entry.annotation === null ? "" : entry.annotation.label === 1 ? "✓1" : "✗0";
    return `<tr class="${classes.join(" ")}" data-index="${index}">
      <td class="rank">${entry.rank}</td>
      <td class="word">${entry.word}</td>
      <td class="value">${fmt(entry.value)}</td>
      <td class="badge">${badge}</td>
    </tr>`;
  });
  el("ranking-body").innerHTML = rows.join("");
  el("ranking-body")
    .querySelectorAll("tr")
    .forEach((tr) =>
      tr.addEventListener("click", () => {
        session.cursor = Number(tr.dataset.index);
        render();
        void renderDetail();
      }),
    );
}

async function renderDetail(): Promise<void> {
  if (!controller) return;
  const entry = controller.session.current();
  const panel = el("detail");
  if (!entry) {
    panel.classList.add("empty");
    el("detail-word").textContent = "—";
    return;
  }
  panel.classList.remove("empty");
  detailCache = await api.getWordDetail(entry.word);
  if (controller.session.current()?.word !== detailCache.word) return; // stale
  el("detail-word").innerHTML =
    detailCache.word + (detailCache.toponym ? ' <span class="flag">toponym?</span>' : "");
  el("scores").innerHTML = detailCache.scores
    .map((s) => `<li>${s.metric}: rank ${s.rank}, ${fmt(s.value)}</li>`)
    .join("");
  el("province-body").innerHTML = detailCache.locations
    .map(
      (row) => `<tr>
        <td>${row.name}</td>
        <td class="num">${row.users}</td>
        <td class="num">${row.occurrences}</td>
        <td class="num">${fmt(row.per_million)}</td>
      </tr>`,
    )
    .join("");
  el("samples").innerHTML = detailCache.samples.length
    ? detailCache.samples
        .map((s) => `<li><span class="pseudo">${s.user}</span> ${escapeHtml(s.text)}</li>`)
        .join("")
    : "<li class=\"none\">no sample contexts indexed</li>";
}

function escapeHtml(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

void boot();
