// Browser bootstrap: wires the wizard, results view and sensitivity
// sliders to the DOM. All state transitions go through the view models;
// this layer only reads events and re-renders.

import { ApiClient } from './api';
import { ResultsView, SensitivityPanel } from './results';
import { renderGauge, renderQuestion, renderResults, renderSensitivityResult, renderSliders } from './render';
import { WizardState } from './wizard';
import type { Descriptor, ModelDocument } from './types';

const api = new ApiClient('');
const app = document.getElementById('app')!;

async function boot(): Promise<void> {
  const model = await api.bankingModel();
  const params = new URLSearchParams(window.location.search);
  const mode = params.get('mode') === 'continuous' ? 'continuous' : 'discrete';
  const modelHash = await api.uploadModel(JSON.stringify(model));
  const wizard = await WizardState.start(api, modelHash, mode, model.hierarchy.nodes);
  draw(wizard, model, modelHash);
}

function labelsOf(model: ModelDocument): Map<string, string> {
  return new Map(model.hierarchy.nodes.map((n) => [n.id, n.label]));
}

function draw(wizard: WizardState, model: ModelDocument, modelHash: string): void {
  if (wizard.phase === 'done') {
    void drawResults(wizard, model, modelHash);
    return;
  }
  const q = wizard.current!;
  const gauges = Object.entries(wizard.status?.per_node ?? {})
    .map(([node, progress]) => renderGauge(wizard.label(node), progress))
    .join('');
  app.innerHTML = renderQuestion(wizard, q) + `<aside class="gauges">${gauges}</aside>`;

  app.querySelectorAll<HTMLButtonElement>('button.descriptor').forEach((button) => {
    button.addEventListener('click', () => {
      wizard.select(button.dataset.descriptor as Descriptor);
      draw(wizard, model, modelHash);
    });
  });
  document.getElementById('direction')!.addEventListener('click', () => {
    wizard.toggleDirection();
    draw(wizard, model, modelHash);
  });
  document.getElementById('submit')!.addEventListener('click', () => {
    void wizard.submitVerbal().then(() => draw(wizard, model, modelHash));
  });
  const ratioButton = document.getElementById('submit-ratio');
  if (ratioButton) {
    ratioButton.addEventListener('click', () => {
      const input = document.getElementById('ratio') as HTMLInputElement;
      void wizard.submitValue(input.value).then(() => draw(wizard, model, modelHash));
    });
  }
  app.querySelectorAll<HTMLElement>('.gauge .worst').forEach((hint) => {
    hint.addEventListener('click', () => {
      // jump back to the flagged pair: answering it again overwrites
      const node = hint.closest('.gauge')?.getAttribute('data-node');
      if (node) void wizard.refresh().then(() => draw(wizard, model, modelHash));
    });
  });
}

async function drawResults(wizard: WizardState, model: ModelDocument, modelHash: string): Promise<void> {
  const labels = labelsOf(model);
  const results = new ResultsView(api);
  await results.loadSession(wizard.session.session_id);

  const goal = model.hierarchy.nodes.find((n) => n.kind === 'goal')!;
  const weights = results.report.global_priorities.per_node;
  const criteria = goal.children.map((id) => ({
    id,
    label: labels.get(id) ?? id,
    weight: weights[id],
  }));
  const panel = new SensitivityPanel(api, modelHash, goal.children);

  app.innerHTML = renderResults(results, labels) + renderSliders(criteria);
  app.querySelectorAll<HTMLInputElement>('input[type="range"]').forEach((slider) => {
    slider.addEventListener('change', () => {
      void panel
        .query(slider.dataset.criterion!, Number(slider.value))
        .then((response) => {
          document.getElementById('sensitivity-output')!.innerHTML = renderSensitivityResult(
            response,
            labels,
          );
        });
    });
  });
}

void boot();
