/** Application shell: model picker, session lifecycle, banner, root impact.
 *
 * User actions are funnelled through a single promise chain so mutations
 * apply in click order and tests can await quiescence with settled().
 */

import { ApiClient, type ModelDetail, type SessionView } from "./api.js";
import { SessionController, type Notice } from "./controller.js";
import { renderViews } from "./view.js";

export interface App {
  ready: Promise<void>;
  settled: () => Promise<void>;
  selectModel: (modelId: string) => Promise<void>;
  controller: () => SessionController;
  api: ApiClient;
}

export function mountApp(root: HTMLElement, baseUrl = ""): App {
  root.innerHTML = `
    <header class="toolbar">
      <label>Model
        <select id="model-picker"></select>
      </label>
      <button id="reset" type="button">Reset session</button>
      <span id="session-meta"></span>
    </header>
    <div id="banner" hidden></div>
    <div id="root-impact">
      Root impact:
      <span id="root-impact-state"></span>
      <span class="path-sep">via</span>
      <span id="root-impact-path"></span>
    </div>
    <div class="panes" id="panes"></div>
  `;

  const api = new ApiClient(baseUrl);
  const picker = root.querySelector("#model-picker") as HTMLSelectElement;
  const banner = root.querySelector("#banner") as HTMLElement;
  const panes = root.querySelector("#panes") as HTMLElement;
  const meta = root.querySelector("#session-meta") as HTMLElement;
  const impactState = root.querySelector("#root-impact-state") as HTMLElement;
  const impactPath = root.querySelector("#root-impact-path") as HTMLElement;

  let detail: ModelDetail | null = null;
  let controller: SessionController | null = null;
  let chain: Promise<unknown> = Promise.resolve();

  const showBanner = (notice: Notice | null): void => {
    if (!notice) {
      banner.hidden = true;
      banner.textContent = "";
      banner.className = "";
      return;
    }
    banner.hidden = false;
    banner.textContent = notice.text;
    banner.className = `banner banner-${notice.kind}`;
  };

  const enqueue = (work: () => Promise<void>): Promise<void> => {
    const next = chain.then(work).catch((error: unknown) => {
      showBanner({
        kind: "error",
        text: error instanceof Error ? error.message : String(error),
      });
    });
    chain = next;
    return next;
  };

  const render = (view: SessionView, notice: Notice | null): void => {
    if (!detail || !controller) {
      return;
    }
    const owner = controller;
    try {
      renderViews(panes, detail, view, {
        onToggle: (stepId) => void enqueue(() => owner.toggle(stepId)),
      });
    } catch (error) {
      showBanner({
        kind: "error",
        text: `Render failed: ${error instanceof Error ? error.message : String(error)}`,
      });
      return;
    }
    impactState.textContent = String(view.rootImpact.state);
    impactPath.textContent = view.rootImpact.path.join(" -> ");
    meta.textContent = `${detail.id} · ${view.mode} · revision ${view.revision}`;
    showBanner(notice);
  };

  const loadModel = async (modelId: string): Promise<void> => {
    if (controller) {
      controller.stop().catch(() => {});
      controller = null;
    }
    detail = await api.getModel(modelId);
    controller = new SessionController(api, detail);
    controller.onChange(render);
    picker.value = modelId;
    await controller.start();
  };

  const ready = enqueue(async () => {
    const models = await api.listModels();
    picker.textContent = "";
    for (const model of models) {
      const option = document.createElement("option");
      option.value = model.id;
      option.textContent = `${model.name} (${model.steps} steps)`;
      picker.appendChild(option);
    }
    const first = models[0];
    if (!first) {
      throw new Error("service has no combined models");
    }
    await loadModel(first.id);
  });

  picker.addEventListener("change", () => {
    void enqueue(() => loadModel(picker.value));
  });
  (root.querySelector("#reset") as HTMLButtonElement).addEventListener("click", () => {
    void enqueue(async () => {
      if (controller) {
        await controller.reset();
      }
    });
  });

  return {
    ready,
    settled: () => chain.then(() => undefined),
    selectModel: (modelId) => enqueue(() => loadModel(modelId)),
    controller: () => {
      if (!controller) {
        throw new Error("no model loaded");
      }
      return controller;
    },
    api,
  };
}
