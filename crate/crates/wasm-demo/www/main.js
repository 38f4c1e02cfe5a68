import init, {
  listFixtures, seasonSeries, forecast, seasonTable, compareTables, nullHistogram,
} from "./pkg/league_trend_wasm.js";

const $ = (id) => document.getElementById(id);
let series = null;

function axes(ctx, w, h, pad, xMax, yMax) {
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#999";
  ctx.beginPath();
  ctx.moveTo(pad, pad);
  ctx.lineTo(pad, h - pad);
  ctx.lineTo(w - pad, h - pad);
  ctx.stroke();
  ctx.fillStyle = "#666";
  ctx.font = "11px sans-serif";
  ctx.fillText(String(yMax), 4, pad + 4);
  ctx.fillText(String(xMax), w - pad - 8, h - pad + 14);
  return {
    x: (v) => pad + (v / xMax) * (w - 2 * pad),
    y: (v) => h - pad - (v / yMax) * (h - 2 * pad),
  };
}

function drawCurve(points, result, trainLen) {
  const c = $("curve");
  const ctx = c.getContext("2d");
  const n = points.length;
  const yMax = Math.max(...points, ...result.curve, 1);
  const s = axes(ctx, c.width, c.height, 30, n, Math.ceil(yMax));
  ctx.fillStyle = "#2563eb";
  points.forEach((p, i) => {
    ctx.globalAlpha = i < trainLen ? 1 : 0.35;
    ctx.fillRect(s.x(i + 1) - 2, s.y(p) - 2, 4, 4);
  });
  ctx.globalAlpha = 1;
  ctx.strokeStyle = "#dc2626";
  ctx.beginPath();
  result.curve.forEach((v, i) => (i ? ctx.lineTo : ctx.moveTo).call(ctx, s.x(i + 1), s.y(v)));
  ctx.stroke();
  ctx.strokeStyle = "#aaa";
  ctx.setLineDash([4, 4]);
  ctx.beginPath();
  ctx.moveTo(s.x(trainLen + 0.5), s.y(0));
  ctx.lineTo(s.x(trainLen + 0.5), s.y(yMax));
  ctx.stroke();
  ctx.setLineDash([]);
}

function params() {
  return { ts: Number($("ts").value), degree: Number($("degree").value) };
}

function showError(el, e) {
  el.textContent = String(e);
  el.className = "error";
}

function updateForecast() {
  const team = series.teams.find((t) => t.team === $("team").value);
  const { ts, degree } = params();
  try {
    const r = JSON.parse(forecast(JSON.stringify(team.points), ts, degree));
    drawCurve(team.points, r, r.train_len);
    $("forecast-summary").className = "";
    $("forecast-summary").textContent =
      `Predicted ${r.predicted} points, actual ${r.actual}, error ${r.abs_error}.`;
  } catch (e) {
    showError($("forecast-summary"), e);
  }
}

function updateTable() {
  const { ts, degree } = params();
  const body = $("table").querySelector("tbody");
  body.replaceChildren();
  try {
    const r = JSON.parse(seasonTable($("season").value, ts, degree));
    $("table-summary").className = "";
    $("table-summary").textContent = `D = ${r.D} of ${r.max_D}, d = ${r.d.toFixed(3)}`;
    for (const row of r.rows) {
      const tr = document.createElement("tr");
      if (row.predicted_rank !== row.actual_rank) tr.className = "moved";
      for (const v of [row.predicted_rank, row.team, row.predicted_points, row.actual_rank, row.actual_points]) {
        const td = document.createElement("td");
        td.textContent = v;
        tr.append(td);
      }
      body.append(tr);
    }
    $("order-a").value = [...r.rows].sort((a, b) => a.actual_rank - b.actual_rank).map((x) => x.team).join("\n");
    $("order-b").value = r.rows.map((x) => x.team).join("\n");
  } catch (e) {
    showError($("table-summary"), e);
  }
}

function loadSeason() {
  series = JSON.parse(seasonSeries($("season").value));
  $("team").replaceChildren(...series.teams.map((t) => new Option(t.team, t.team)));
  updateForecast();
  updateTable();
}

function compare() {
  try {
    const r = JSON.parse(compareTables($("order-a").value, $("order-b").value));
    $("compare-result").className = "";
    $("compare-result").textContent = `D = ${r.total} of ${r.max} over ${r.teams} teams, d = ${r.normalized.toFixed(3)}`;
  } catch (e) {
    showError($("compare-result"), e);
  }
}

function runNull() {
  const { ts, degree } = params();
  try {
    const r = JSON.parse(nullHistogram(
      Number($("null-count").value), Number($("null-n").value), ts, degree,
      Number($("p-win").value), Number($("p-draw").value), BigInt($("seed").value),
    ));
    const c = $("hist");
    const ctx = c.getContext("2d");
    const maxE = Math.max(...r.histogram.map((b) => b[0]), 1);
    const maxC = Math.max(...r.histogram.map((b) => b[1]), 1);
    const s = axes(ctx, c.width, c.height, 30, maxE + 1, maxC);
    ctx.fillStyle = "#2563eb";
    const bw = Math.max(1, s.x(1) - s.x(0) - 1);
    for (const [e, n] of r.histogram) ctx.fillRect(s.x(e), s.y(n), bw, s.y(0) - s.y(n));
    $("null-summary").className = "";
    $("null-summary").textContent = `Mean absolute error ${r.mean.toFixed(3)} over ${r.count} series.`;
  } catch (e) {
    showError($("null-summary"), e);
  }
}

await init();
const fixtures = JSON.parse(listFixtures());
$("season").replaceChildren(...fixtures.map((f) => new Option(`${f.name} ${f.season}`, f.league)));
$("season").addEventListener("change", loadSeason);
$("team").addEventListener("change", updateForecast);
for (const id of ["ts", "degree"]) {
  $(id).addEventListener("change", () => { updateForecast(); updateTable(); });
}
$("compare").addEventListener("click", compare);
$("run-null").addEventListener("click", runNull);
loadSeason();
$("status").textContent = "Bundled seasons are synthetic sample data.";
