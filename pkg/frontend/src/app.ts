/**
 * DOM wiring: a full redraw per state change. All scores and statistics are
 * rendered straight from service documents through the pure render models;
 * nothing is recomputed client-side.
 */

import { Api, ServiceError } from "./api.js";
import { tintToCss } from "./color.js";
import { parseSingleRowCsv, SchemaColumnDoc } from "./csv.js";
import { buildFeatureBars, buildImportanceBars, FeatureBar } from "./render/features.js";
import { buildImageOverlay } from "./render/image.js";
import { buildProfileView } from "./render/profile.js";
import { buildTextRender } from "./render/text.js";
import * as st from "./state.js";
import {
  AttributionDoc,
  ImageSampleDoc,
  SampleDoc,
  ScenarioDescriptor,
  TextSampleDoc,
} from "./types.js";

const IMAGE_SCALE = 7;

export class App {
  private state: st.ViewState = st.initialState();

  constructor(
    private readonly api: Api,
    private readonly root: HTMLElement,
  ) {}

  async start(): Promise<void> {
    try {
      const scenarios = await this.api.scenarios();
      this.update(st.withScenarios(this.state, scenarios));
    } catch (error) {
      this.update(st.receiveServiceError(this.state, describe(error)));
    }
  }

  private update(next: st.ViewState): void {
    this.state = next;
    this.render();
  }

  private async pickScenario(id: string): Promise<void> {
    this.update(st.selectScenario(this.state, id));
    try {
      const samples = await this.api.samples(id);
      if (this.state.selectedScenario === id) {
        this.update(st.receiveSamples(this.state, samples));
      }
    } catch (error) {
      this.update(st.receiveServiceError(this.state, describe(error)));
    }
  }

  private currentSample(): SampleDoc | null {
    if (this.state.userInput) return this.state.userInput;
    const chosen = this.state.samples.find(
      (s) => s.id === this.state.selectedSampleId,
    );
    return chosen?.sample ?? null;
  }

  /** Predict then explain, rendering both (the steering loop). */
  private async predictAndExplain(): Promise<void> {
    const model = this.state.selectedModel;
    const method = this.state.selectedMethod;
    const sample = this.currentSample();
    if (!model || !method) return;
    if (method !== "permutation_importance" && !sample) {
      this.update({ ...this.state, formError: "choose a demo sample or provide an input" });
      return;
    }
    let state = this.state;
    if (method === "permutation_importance") {
      const [withEpoch, epoch] = st.beginRequest(state, "importance");
      this.update(withEpoch);
      try {
        const { importance } = await this.api.permutationImportance(model, 0);
        this.update(st.receiveImportance(this.state, epoch, importance));
      } catch (error) {
        this.update(st.receiveServiceError(this.state, describe(error)));
      }
      return;
    }
    const [s1, predictionEpoch] = st.beginRequest(state, "prediction");
    const [s2, attributionEpoch] = st.beginRequest(s1, "attribution");
    this.update(s2);
    try {
      const { prediction } = await this.api.predict(model, sample!);
      this.update(st.receivePrediction(this.state, predictionEpoch, prediction));
      const { attribution } = await this.api.explain(model, {
        method,
        sample: sample!,
        seed: 0,
      });
      this.update(st.receiveAttribution(this.state, attributionEpoch, attribution));
    } catch (error) {
      this.update(st.receiveServiceError(this.state, describe(error)));
    }
  }

  private async loadProfile(): Promise<void> {
    const scenario = st.currentScenario(this.state);
    if (!scenario || scenario.task !== "tabular") return;
    const [withEpoch, epoch] = st.beginRequest(this.state, "profile");
    this.update(withEpoch);
    try {
      const { profile } = await this.api.profile(scenario.id);
      this.update(st.receiveProfile(this.state, epoch, profile));
    } catch (error) {
      this.update(st.receiveServiceError(this.state, describe(error)));
    }
  }

  private handleTextInput(text: string): void {
    const input: TextSampleDoc = { kind: "text", text };
    this.update(st.setUserInput(this.state, input));
  }

  private async handleImageUpload(file: File): Promise<void> {
    const dataUrl = await readAsDataUrl(file);
    const image = await loadImage(dataUrl);
    const canvas = document.createElement("canvas");
    canvas.width = image.naturalWidth;
    canvas.height = image.naturalHeight;
    canvas.getContext("2d")!.drawImage(image, 0, 0);
    const png = canvas.toDataURL("image/png").split(",", 2)[1];
    const doc: ImageSampleDoc = {
      kind: "image",
      height: image.naturalHeight,
      width: image.naturalWidth,
      png_base64: png,
    };
    this.update(st.setUserInput(this.state, doc));
  }

  private async handleCsvUpload(file: File): Promise<void> {
    const scenario = st.currentScenario(this.state);
    const columns = (scenario as unknown as { schema?: { columns: SchemaColumnDoc[] } })
      ?.schema?.columns;
    if (!columns) {
      this.update({ ...this.state, formError: "this scenario has no tabular schema" });
      return;
    }
    try {
      const doc = parseSingleRowCsv(await file.text(), columns);
      this.update(st.setUserInput(this.state, doc));
    } catch (error) {
      this.update({ ...this.state, formError: describe(error) });
    }
  }

  // -- rendering -------------------------------------------------------

  private render(): void {
    this.root.textContent = "";
    this.root.append(
      this.renderBanners(),
      this.renderScenarioBar(),
      this.renderWorkbench(),
    );
  }

  private renderBanners(): HTMLElement {
    const box = el("div", "banners");
    if (this.state.serviceError) {
      const banner = el("div", "banner error");
      banner.textContent = `service error: ${this.state.serviceError}`;
      box.append(banner);
    }
    if (this.state.formError) {
      const banner = el("div", "banner warn");
      banner.textContent = this.state.formError;
      box.append(banner);
    }
    return box;
  }

  private renderScenarioBar(): HTMLElement {
    const bar = el("nav", "scenario-bar");
    for (const scenario of this.state.scenarios) {
      const button = el("button", "scenario-chip") as HTMLButtonElement;
      button.textContent = `${scenario.title} (${scenario.task})`;
      if (scenario.id === this.state.selectedScenario) {
        button.classList.add("selected");
      }
      button.onclick = () => void this.pickScenario(scenario.id);
      bar.append(button);
    }
    return bar;
  }

  private renderWorkbench(): HTMLElement {
    const scenario = st.currentScenario(this.state);
    const grid = el("div", "workbench");
    if (!scenario) {
      const hint = el("p", "hint");
      hint.textContent = "Pick a scenario to browse its demo samples.";
      grid.append(hint);
      return grid;
    }
    grid.append(this.renderControls(scenario), this.renderResults(scenario));
    return grid;
  }

  private renderControls(scenario: ScenarioDescriptor): HTMLElement {
    const panel = el("section", "panel controls");

    const sampleList = el("div", "sample-list");
    sampleList.append(heading("Demo samples"));
    for (const sample of this.state.samples) {
      const button = el("button", "sample-chip") as HTMLButtonElement;
      button.textContent = `${sample.id} — ${sample.label}`;
      if (sample.id === this.state.selectedSampleId) button.classList.add("selected");
      button.onclick = () => this.update(st.selectSample(this.state, sample.id));
      sampleList.append(button);
    }
    panel.append(sampleList);

    panel.append(heading("Your input"));
    panel.append(this.renderInputForm(scenario));

    panel.append(heading("Model"));
    const modelSelect = el("select") as HTMLSelectElement;
    for (const model of scenario.models) {
      const option = document.createElement("option");
      option.value = model.id;
      option.textContent = `${model.model_kind} · ${model.id.slice(0, 8)}`;
      modelSelect.append(option);
    }
    modelSelect.value = this.state.selectedModel ?? scenario.default_model;
    modelSelect.onchange = () =>
      this.update(st.selectModel(this.state, modelSelect.value));
    panel.append(modelSelect);

    panel.append(heading("Method"));
    const methodSelect = el("select") as HTMLSelectElement;
    for (const method of st.availableMethods(this.state)) {
      const option = document.createElement("option");
      option.value = method;
      option.textContent = method;
      methodSelect.append(option);
    }
    if (this.state.selectedMethod) methodSelect.value = this.state.selectedMethod;
    methodSelect.onchange = () =>
      this.update(st.selectMethod(this.state, methodSelect.value));
    panel.append(methodSelect);

    const go = el("button", "go") as HTMLButtonElement;
    go.textContent = "Predict + explain";
    go.onclick = () => void this.predictAndExplain();
    panel.append(go);

    if (scenario.task === "tabular") {
      const profileButton = el("button", "secondary") as HTMLButtonElement;
      profileButton.textContent = "Dataset information";
      profileButton.onclick = () => void this.loadProfile();
      panel.append(profileButton);
    }
    return panel;
  }

  private renderInputForm(scenario: ScenarioDescriptor): HTMLElement {
    const form = el("div", "input-form");
    if (scenario.task === "text") {
      const area = el("textarea") as HTMLTextAreaElement;
      area.placeholder = "Type a complaint to classify and explain…";
      if (this.state.userInput?.kind === "text") {
        area.value = this.state.userInput.text;
      }
      area.onchange = () => this.handleTextInput(area.value);
      form.append(area);
    } else {
      const file = el("input") as HTMLInputElement;
      file.type = "file";
      file.accept = scenario.task === "image" ? "image/png" : ".csv,text/csv";
      file.onchange = () => {
        const chosen = file.files?.[0];
        if (!chosen) return;
        if (scenario.task === "image") void this.handleImageUpload(chosen);
        else void this.handleCsvUpload(chosen);
      };
      form.append(file);
    }
    return form;
  }

  private renderResults(scenario: ScenarioDescriptor): HTMLElement {
    const panel = el("section", "panel results");

    const prediction = this.state.prediction;
    if (prediction.value) {
      panel.append(heading(st.isStale(prediction) ? "Prediction (updating…)" : "Prediction"));
      const list = el("div", "prediction");
      prediction.value.class_labels.forEach((label, i) => {
        const row = el("div", "prob-row");
        const name = el("span", "prob-label");
        name.textContent = label;
        const bar = el("div", "prob-bar");
        const fill = el("div", "prob-fill");
        fill.style.width = `${(prediction.value!.probabilities[i] * 100).toFixed(1)}%`;
        if (i === prediction.value!.predicted_index) fill.classList.add("winner");
        bar.append(fill);
        const pct = el("span", "prob-pct");
        pct.textContent = `${(prediction.value!.probabilities[i] * 100).toFixed(1)}%`;
        row.append(name, bar, pct);
        list.append(row);
      });
      panel.append(list);
    }

    const attribution = this.state.attribution;
    if (attribution.value) {
      panel.append(heading(
        st.isStale(attribution)
          ? `Explanation (updating…)`
          : `Explanation — ${attribution.value.method} → ${attribution.value.target_class}`,
      ));
      panel.append(this.renderAttribution(scenario, attribution.value));
    }

    const importance = this.state.importance;
    if (importance.value) {
      panel.append(heading("Permutation importance (held-out accuracy drop)"));
      panel.append(renderBars(buildImportanceBars(importance.value)));
    }

    const profile = this.state.profile;
    if (profile.value) {
      panel.append(heading("Dataset information"));
      panel.append(renderProfile(profile.value));
    }
    return panel;
  }

  private renderAttribution(
    scenario: ScenarioDescriptor,
    attribution: AttributionDoc,
  ): HTMLElement {
    if (attribution.unit_kind === "token") {
      const sample = this.currentSample();
      const text = sample?.kind === "text" ? sample.text : "";
      const model = buildTextRender(text, attribution);
      if (model.error) return errorBox(model.error);
      const box = el("p", "text-explanation");
      for (const segment of model.segments) {
        if (segment.tint === null) {
          box.append(document.createTextNode(segment.text));
        } else {
          const mark = el("span", "token") as HTMLSpanElement;
          mark.textContent = segment.text;
          mark.style.backgroundColor = tintToCss(segment.tint);
          mark.title = `${segment.unit}: ${segment.score}`;
          box.append(mark);
        }
      }
      return box;
    }
    if (attribution.unit_kind === "segment") {
      const sample = this.currentSample();
      if (sample?.kind !== "image") return errorBox("no image to overlay");
      const grid = imageGrid(scenario);
      const model = buildImageOverlay(
        sample.height, sample.width, grid[0], grid[1], attribution,
      );
      if (model.error) return errorBox(model.error);
      const wrap = el("div", "image-explanation");
      const canvas = el("canvas") as HTMLCanvasElement;
      canvas.width = sample.width * IMAGE_SCALE;
      canvas.height = sample.height * IMAGE_SCALE;
      const context = canvas.getContext("2d")!;
      const base = new Image();
      base.onload = () => {
        context.imageSmoothingEnabled = false;
        context.drawImage(base, 0, 0, canvas.width, canvas.height);
        for (const cell of model.cells) {
          context.fillStyle = tintToCss({ ...cell.tint, alpha: cell.tint.alpha * 0.55 });
          context.fillRect(
            cell.x * IMAGE_SCALE, cell.y * IMAGE_SCALE,
            cell.width * IMAGE_SCALE, cell.height * IMAGE_SCALE,
          );
          if (cell.tint.alpha > 0.02) {
            context.strokeStyle = tintToCss(cell.tint);
            context.lineWidth = 2;
            context.strokeRect(
              cell.x * IMAGE_SCALE, cell.y * IMAGE_SCALE,
              cell.width * IMAGE_SCALE, cell.height * IMAGE_SCALE,
            );
          }
        }
      };
      base.src = `data:image/png;base64,${sample.png_base64}`;
      wrap.append(canvas);
      const legend = el("p", "legend");
      legend.textContent =
        `target ${model.legend.targetClass} · ` +
        `p = ${model.legend.predictionValue.toFixed(4)} · ` +
        `strongest |score| = ${model.legend.maxAbsScore.toExponential(2)}`;
      wrap.append(legend);
      return wrap;
    }
    return renderBars(buildFeatureBars(attribution));
  }
}

// -- small DOM helpers --------------------------------------------------

function el(tag: string, className?: string): HTMLElement {
  const node = document.createElement(tag);
  if (className) node.className = className;
  return node;
}

function heading(text: string): HTMLElement {
  const h = el("h3");
  h.textContent = text;
  return h;
}

function errorBox(message: string): HTMLElement {
  const box = el("div", "banner error");
  box.textContent = message;
  return box;
}

function renderBars(bars: FeatureBar[]): HTMLElement {
  const box = el("div", "feature-bars");
  for (const bar of bars) {
    const row = el("div", "bar-row");
    const name = el("span", "bar-label");
    name.textContent = bar.unit;
    const track = el("div", "bar-track");
    const fill = el("div", "bar-fill");
    fill.style.width = `${(Math.abs(bar.normalized) * 100).toFixed(1)}%`;
    fill.style.backgroundColor = tintToCss(bar.tint);
    track.append(fill);
    const value = el("span", "bar-value");
    value.textContent = bar.score.toExponential(3);
    row.append(name, track, value);
    box.append(row);
  }
  return box;
}

function renderProfile(profileDoc: Parameters<typeof buildProfileView>[0]): HTMLElement {
  const view = buildProfileView(profileDoc);
  const box = el("div", "profile");
  const meta = el("p", "hint");
  meta.textContent = `${view.rowCount} rows`;
  box.append(meta);
  const table = el("table", "profile-table") as HTMLTableElement;
  const head = table.createTHead().insertRow();
  for (const column of ["column", "kind", "missing", "distinct", "summary", "distribution", "warnings"]) {
    const th = document.createElement("th");
    th.textContent = column;
    head.append(th);
  }
  const body = table.createTBody();
  for (const row of view.rows) {
    const tr = body.insertRow();
    tr.insertCell().textContent = row.name;
    tr.insertCell().textContent = row.kind;
    tr.insertCell().textContent = row.missing;
    tr.insertCell().textContent = String(row.distinct);
    tr.insertCell().textContent = row.summary;
    const spark = tr.insertCell();
    const sparkBox = el("div", "sparkline");
    for (const bin of row.sparkline) {
      const bar = el("div", "spark-bar");
      bar.style.height = `${Math.max(2, bin.fraction * 28)}px`;
      bar.title = `${bin.label}: ${bin.count}`;
      sparkBox.append(bar);
    }
    spark.append(sparkBox);
    tr.insertCell().textContent = row.warnings.join("; ");
  }
  box.append(table);

  if (view.correlationColumns.length > 0) {
    box.append(heading("Correlations (Pearson, pairwise-complete)"));
    const grid = el("table", "correlation") as HTMLTableElement;
    const head2 = grid.createTHead().insertRow();
    head2.append(document.createElement("th"));
    for (const name of view.correlationColumns) {
      const th = document.createElement("th");
      th.textContent = name;
      head2.append(th);
    }
    const body2 = grid.createTBody();
    for (const row of view.correlation) {
      const tr = body2.insertRow();
      const th = document.createElement("th");
      th.textContent = row[0]?.row ?? "";
      tr.append(th);
      for (const cell of row) {
        const td = tr.insertCell();
        td.textContent = cell.value === null ? "–" : cell.value.toFixed(2);
        if (cell.tint) td.style.backgroundColor = tintToCss({ ...cell.tint, alpha: cell.tint.alpha * 0.5 });
      }
    }
    box.append(grid);
  }
  return box;
}

function imageGrid(scenario: ScenarioDescriptor): [number, number] {
  for (const model of scenario.models) {
    const config = (model.metadata as { config?: { grid?: number[] } }).config;
    if (config?.grid && config.grid.length === 2) {
      return [config.grid[0], config.grid[1]];
    }
  }
  return [4, 4];
}

function describe(error: unknown): string {
  if (error instanceof ServiceError) return `${error.category}: ${error.message}`;
  return error instanceof Error ? error.message : String(error);
}

function readAsDataUrl(file: File): Promise<string> {
  return new Promise((resolve, reject) => {
    const reader = new FileReader();
    reader.onload = () => resolve(reader.result as string);
    reader.onerror = () => reject(reader.error);
    reader.readAsDataURL(file);
  });
}

function loadImage(src: string): Promise<HTMLImageElement> {
  return new Promise((resolve, reject) => {
    const image = new Image();
    image.onload = () => resolve(image);
    image.onerror = reject;
    image.src = src;
  });
}
