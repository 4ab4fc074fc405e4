/** App wiring: session form, board, regime plane, and tree explorer tabs. */

import { ApiClient, type CreateSessionRequest, type VariantSpec } from "./api.js";
import { Board } from "./board.js";
import { RegimePlane } from "./regimePlane.js";
import { MAX_EXPLORER_DEPTH, TreeExplorer } from "./treeExplorer.js";

function mustGet<T extends HTMLElement>(selector: string): T {
	const node = document.querySelector(selector);
	if (!node) throw new Error(`missing element ${selector}`);
	return node as T;
}

function readVariant(): VariantSpec {
	const kind = mustGet<HTMLSelectElement>("#variant-kind").value as VariantSpec["kind"];
	const alpha = mustGet<HTMLInputElement>("#param-alpha").value.trim();
	const beta = mustGet<HTMLInputElement>("#param-beta").value.trim();
	if (kind === "schmidt") return { kind, alpha, beta };
	if (kind === "mcmullen") return { kind, beta };
	return { kind };
}

export function bootstrap(baseUrl: string): void {
	const api = new ApiClient(baseUrl);
	const board = new Board(mustGet("#board"), api);
	new RegimePlane(mustGet("#regime"), api);
	const explorer = new TreeExplorer(mustGet("#tree"), api);

	mustGet<HTMLButtonElement>("#start-session").addEventListener("click", () => {
		const side = mustGet<HTMLSelectElement>("#human-side").value as "bob" | "alice";
		const request: CreateSessionRequest = {
			variant: readVariant(),
			human_side: side,
			horizon: Number(mustGet<HTMLInputElement>("#horizon").value) || 5,
			engine_strategy: mustGet<HTMLInputElement>("#engine-strategy").value.trim(),
		};
		const point = mustGet<HTMLInputElement>("#target-point").value.trim();
		if (point) request.target = { kind: "co-singleton", point };
		if (side === "alice") {
			// engine Bob opens; pinning strategies carry their own opening
		} else {
			request.b0_lo = mustGet<HTMLInputElement>("#b0-lo").value.trim() || undefined;
			request.b0_hi = mustGet<HTMLInputElement>("#b0-hi").value.trim() || undefined;
		}
		void board.start(request);
	});

	mustGet<HTMLButtonElement>("#build-tree").addEventListener("click", () => {
		const depth = Number(mustGet<HTMLInputElement>("#tree-depth").value) || 3;
		void explorer.load(readVariant(), "split-thirds", "alice", depth, {
			lo: "0",
			hi: "1",
		});
	});
	mustGet<HTMLInputElement>("#tree-depth").max = String(MAX_EXPLORER_DEPTH);

	for (const tab of Array.from(document.querySelectorAll<HTMLButtonElement>("[data-tab]"))) {
		tab.addEventListener("click", () => {
			for (const panel of Array.from(
				document.querySelectorAll<HTMLElement>("[data-panel]"),
			)) {
				panel.hidden = panel.dataset.panel !== tab.dataset.tab;
			}
		});
	}
}

declare global {
	interface Window {
		INTERVALGAMES_BASE_URL?: string;
	}
}

if (typeof window !== "undefined" && typeof document !== "undefined" && document.body) {
	const base = window.INTERVALGAMES_BASE_URL ?? window.location.origin;
	if (document.querySelector("#board")) bootstrap(base);
}
