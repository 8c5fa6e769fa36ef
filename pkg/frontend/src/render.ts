// HTML renderers: pure functions from view-model data to markup, kept
// free of DOM APIs so they are unit-testable. Numbers are interpolated
// exactly as the service sent them (String(n)); bar widths are CSS
// presentation only.

import type { CurrentQuestion, WizardState } from './wizard';
import type { ResultsView } from './results';
import type { ConsistencyPayload, NodeProgress, SensitivityResponse } from './types';
import { DESCRIPTORS, DESCRIPTOR_LABELS } from './types';

function esc(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

export function renderQuestion(wizard: WizardState, q: CurrentQuestion): string {
  const first = esc(wizard.label(q.first));
  const second = esc(wizard.label(q.second));
  const buttons = DESCRIPTORS.map(
    (d) =>
      `<button class="descriptor${d === wizard.selectedDescriptor ? ' selected' : ''}" data-descriptor="${d}">` +
      `${esc(DESCRIPTOR_LABELS[d])}</button>`,
  ).join('');
  const direction =
    wizard.direction === 'first_over_second'
      ? `${first} over ${second}`
      : `${second} over ${first}`;
  const continuousField = wizard.continuous
    ? `<div class="continuous"><label>exact ratio <input id="ratio" placeholder="e.g. 2.08 or 5/2"></label>
       <button id="submit-ratio">submit ratio</button></div>`
    : '';
  const error = wizard.error ? `<p class="error">${esc(wizard.error)}</p>` : '';
  return `
    <section class="question" data-node="${esc(q.node)}" data-i="${q.i}" data-j="${q.j}">
      <h2>${esc(q.question)}</h2>
      <p class="remaining">${q.remaining} comparisons remaining</p>
      <div class="descriptors">${buttons}</div>
      <button id="direction">direction: ${direction}</button>
      <button id="submit">answer</button>
      ${continuousField}
      ${error}
    </section>`;
}

export function renderGauge(nodeLabel: string, progress: NodeProgress): string {
  const { answered, total, consistency } = progress;
  if (!consistency) {
    return `<div class="gauge pending"><span class="node">${esc(nodeLabel)}</span> ${answered}/${total}</div>`;
  }
  const cls = consistency.consistent ? 'ok' : 'inconsistent';
  const worst = consistency.worst_judgment
    ? ` <span class="worst" data-i="${consistency.worst_judgment.i}" data-j="${consistency.worst_judgment.j}">revise pair ${consistency.worst_judgment.i + 1}-${consistency.worst_judgment.j + 1}</span>`
    : '';
  return (
    `<div class="gauge ${cls}"><span class="node">${esc(nodeLabel)}</span> ` +
    `CR <span class="cr">${consistency.cr}</span>` +
    (consistency.consistent ? '' : worst) +
    `</div>`
  );
}

export function renderResults(view: ResultsView, labels: Map<string, string>): string {
  const name = (id: string) => esc(labels.get(id) ?? id);
  const top = view.topScore || 1;
  const bars = view.ranking
    .map(
      ([alt, score]) =>
        `<div class="bar-row"><span class="bar-label">${name(alt)}</span>` +
        `<div class="bar" style="width:${(score / top) * 100}%"></div>` +
        `<span class="score">${score}</span></div>`,
    )
    .join('');

  const table = view.report.contribution_table;
  let grid = '';
  if (table) {
    const header = table.columns.map((c) => `<th>${name(c)}</th>`).join('');
    const rows = table.rows
      .map((r, ri) => {
        const cells = table.cells[ri].map((v) => `<td>${v}</td>`).join('');
        return `<tr><th>${name(r)}</th>${cells}<td class="total">${table.row_totals[ri]}</td></tr>`;
      })
      .join('');
    const totals = table.column_totals.map((v) => `<td class="total">${v}</td>`).join('');
    grid = `<table class="contribution">
      <tr><th></th>${header}<th>TOTAL</th></tr>
      ${rows}
      <tr><th>TOTAL</th>${totals}<td></td></tr>
    </table>`;
  }

  const consistency = Object.entries(view.report.consistency)
    .map(([node, c]: [string, ConsistencyPayload]) =>
      renderGauge(labels.get(node) ?? node, { answered: 0, total: 0, consistency: c }),
    )
    .join('');

  return `<section class="results">
    <h2>Overall priorities</h2>
    <div class="bars">${bars}</div>
    ${grid}
    ${consistency ? `<h3>Consistency</h3>${consistency}` : ''}
  </section>`;
}

export function renderSliders(
  criteria: { id: string; label: string; weight: number }[],
): string {
  const rows = criteria
    .map(
      (c) =>
        `<div class="slider-row"><label>${esc(c.label)}</label>` +
        `<input type="range" min="0" max="1" step="0.01" value="${c.weight}" data-criterion="${esc(c.id)}">` +
        `<span class="weight">${c.weight}</span></div>`,
    )
    .join('');
  return `<section class="sensitivity"><h2>What if?</h2>${rows}<div id="sensitivity-output"></div></section>`;
}

export function renderSensitivityResult(
  response: SensitivityResponse,
  labels: Map<string, string>,
): string {
  const name = (id: string) => esc(labels.get(id) ?? id);
  const rows = response.ranking
    .map(([alt, score]) => `<div class="bar-row"><span class="bar-label">${name(alt)}</span><span class="score">${score}</span></div>`)
    .join('');
  const changes = response.rank_changes.length
    ? `<ul class="rank-changes">${response.rank_changes
        .map((rc) => `<li>${name(rc.alternative)}: ${rc.before} &rarr; ${rc.after}</li>`)
        .join('')}</ul>`
    : '<p class="rank-changes none">no rank changes</p>';
  return `<div class="what-if" data-criterion="${esc(response.criterion)}">
    <p>${name(response.criterion)} at ${response.new_weight}</p>
    ${rows}
    ${changes}
  </div>`;
}
