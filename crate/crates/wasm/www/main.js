import init, { enumerate, compose, positivity_profile, bratteli_svg } from "./pkg/tlcat_wasm.js";

const $ = (id) => document.getElementById(id);

function fillDiagrams() {
  const n = Number($("pts").value);
  const list = JSON.parse(enumerate(n, n));
  for (const sel of [$("upper"), $("lower")]) {
    sel.innerHTML = list.map((d) => `<option>${d}</option>`).join("");
  }
  $("lower").selectedIndex = Math.min(1, list.length - 1);
  showCompose();
}

function showCompose() {
  const r = JSON.parse(compose($("upper").value, $("lower").value));
  if (r.error) {
    $("result").innerHTML = `<span class="err">${r.error}</span>`;
    return;
  }
  $("pics").innerHTML = r.upper_svg + r.lower_svg;
  $("factor").textContent = r.loops === 0 ? "" : r.loops === 1 ? "d ·" : `d^${r.loops} ·`;
  $("result").innerHTML = r.result_svg + `<div>${r.diagram}</div>`;
}

function showPositivity() {
  const d = Number($("d").value);
  $("dval").textContent = d.toFixed(2);
  const r = JSON.parse(positivity_profile(d, Number($("strands").value)));
  if (r.error) {
    $("verdict").innerHTML = `<span class="err">${r.error}</span>`;
    $("levels").innerHTML = "";
    return;
  }
  $("verdict").textContent = r.violated_at === null
    ? "positive semidefinite at every level scanned"
    : `not positive: first fails at ${r.violated_at} strands`;
  const rows = r.levels.map((l) =>
    `<tr><td>${l.strands}</td><td>${l.dimension}</td><td class="${l.min < 0 ? "neg" : ""}">${l.min.toExponential(4)}</td></tr>`);
  $("levels").innerHTML = "<tr><th>strands</th><th>dim</th><th>min eigenvalue</th></tr>" + rows.join("");
}

function showBratteli() {
  const r = JSON.parse(bratteli_svg(Number($("blevels").value), Number($("trunc").value)));
  $("bratteli").innerHTML = r.error ? `<span class="err">${r.error}</span>` : r.svg;
}

await init();
$("pts").addEventListener("change", fillDiagrams);
$("upper").addEventListener("change", showCompose);
$("lower").addEventListener("change", showCompose);
$("d").addEventListener("input", showPositivity);
$("strands").addEventListener("change", showPositivity);
$("blevels").addEventListener("change", showBratteli);
$("trunc").addEventListener("change", showBratteli);
fillDiagrams();
showPositivity();
showBratteli();
