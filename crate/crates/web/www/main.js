import init, { coefficients, trace, split_scan } from "./pkg/tailsum_web.js";

const $ = (id) => document.getElementById(id);

function fail(el, e) {
  el.innerHTML = `<span class="err">${String(e)}</span>`;
}

function axes(ctx, w, h, pad, ymin, ymax, xmin, xmax, ylabel) {
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#999";
  ctx.beginPath();
  ctx.moveTo(pad, pad);
  ctx.lineTo(pad, h - pad);
  ctx.lineTo(w - pad, h - pad);
  ctx.stroke();
  ctx.fillStyle = "#555";
  ctx.font = "11px sans-serif";
  for (let i = 0; i <= 5; i++) {
    const y = ymin + ((ymax - ymin) * i) / 5;
    const py = h - pad - ((h - 2 * pad) * i) / 5;
    ctx.fillText(y.toFixed(0), 4, py + 3);
  }
  ctx.fillText(xmin, pad, h - pad + 14);
  ctx.fillText(xmax, w - pad - 10, h - pad + 14);
  ctx.fillText(ylabel, pad + 4, pad - 4);
}

function runTrace() {
  const out = $("t-out");
  try {
    const t = JSON.parse(trace($("t-n").value, +$("t-split").value, $("t-alt").checked, +$("t-max").value, 25));
    const pts = t.points.filter((p) => isFinite(p.log10_magnitude));
    const c = $("t-plot"), ctx = c.getContext("2d"), pad = 36;
    if (pts.length === 0) { out.textContent = "all terms are zero"; return; }
    const ys = pts.map((p) => p.log10_magnitude);
    const ymin = Math.floor(Math.min(...ys)), ymax = Math.ceil(Math.max(...ys));
    const xmax = pts[pts.length - 1].order || 1;
    axes(ctx, c.width, c.height, pad, ymin, ymax, 0, xmax, "log10 |term|");
    const px = (o) => pad + ((c.width - 2 * pad) * o) / xmax;
    const py = (y) => c.height - pad - ((c.height - 2 * pad) * (y - ymin)) / Math.max(ymax - ymin, 1);
    for (const p of pts) {
      ctx.fillStyle = p.included ? "#1565c0" : "#bbb";
      ctx.beginPath();
      ctx.arc(px(p.order), py(p.log10_magnitude), 3, 0, 2 * Math.PI);
      ctx.fill();
    }
    ctx.strokeStyle = "#c62828";
    ctx.setLineDash([4, 4]);
    ctx.beginPath();
    ctx.moveTo(px(t.k_star), pad);
    ctx.lineTo(px(t.k_star), c.height - pad);
    ctx.stroke();
    ctx.setLineDash([]);
    out.textContent =
      `value          ${t.value}\n` +
      `head (exact)   ${t.head}\n` +
      `k*             ${t.k_star}   (red line; blue terms are kept)\n` +
      `error estimate ${t.error_estimate.toExponential(3)}\n` +
      `mode           ${t.mode}${t.diverged ? "   series turned upward: asymptotic, truncated at its smallest term" : ""}`;
  } catch (e) {
    fail(out, e);
  }
}

function runScan() {
  const out = $("s-out");
  try {
    const rows = JSON.parse(split_scan($("s-n").value, $("s-alt").checked, +$("s-from").value, +$("s-to").value, 30));
    const c = $("s-plot"), ctx = c.getContext("2d"), pad = 36;
    const ys = rows.map((r) => Math.log10(Math.max(r.error_estimate, 1e-300)));
    const ymin = Math.floor(Math.min(...ys)), ymax = Math.ceil(Math.max(...ys));
    const xmin = rows[0].split, xmax = rows[rows.length - 1].split;
    axes(ctx, c.width, c.height, pad, ymin, ymax, xmin, xmax, "log10 error estimate vs split");
    const px = (s) => pad + ((c.width - 2 * pad) * (s - xmin)) / Math.max(xmax - xmin, 1);
    const py = (y) => c.height - pad - ((c.height - 2 * pad) * (y - ymin)) / Math.max(ymax - ymin, 1);
    ctx.strokeStyle = "#1565c0";
    ctx.beginPath();
    rows.forEach((r, i) => (i ? ctx.lineTo : ctx.moveTo).call(ctx, px(r.split), py(ys[i])));
    ctx.stroke();
    out.innerHTML =
      "<table><tr><th>split</th><th>value</th><th>error estimate</th><th>k*</th></tr>" +
      rows.map((r) => `<tr><td>${r.split}</td><td>${r.value}</td><td>${r.error_estimate.toExponential(2)}</td><td>${r.k_star}</td></tr>`).join("") +
      "</table>";
  } catch (e) {
    fail(out, e);
  }
}

function runCoefficients() {
  const out = $("c-out");
  try {
    const rows = JSON.parse(coefficients($("c-kind").value, +$("c-count").value));
    out.innerHTML =
      "<table><tr><th>index</th><th>numerator</th><th>denominator</th><th>≈</th></tr>" +
      rows.map((r) => `<tr><td>${r.index}</td><td>${r.num}</td><td>${r.den}</td><td>${r.approx.toExponential(6)}</td></tr>`).join("") +
      "</table>";
  } catch (e) {
    fail(out, e);
  }
}

await init();
$("t-run").onclick = runTrace;
$("s-run").onclick = runScan;
$("c-run").onclick = runCoefficients;
runTrace();
runScan();
runCoefficients();
