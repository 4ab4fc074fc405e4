/**
 * Dyadic tree explorer: request a bounded-depth tree from the service and
 * render each level as one row of interval bars inside the root interval.
 * Clicking a node shows its fragment move list, verbatim.
 */

import type { ApiClient, MoveWire, TreeView, VariantSpec } from "./api.js";
import { ServiceError } from "./api.js";
import { ratFromString, toNumber } from "./rational.js";

export const MAX_EXPLORER_DEPTH = 8;

export class TreeExplorer {
	readonly root: HTMLElement;
	readonly rows: HTMLDivElement;
	readonly fragmentPanel: HTMLOListElement;
	readonly errorBanner: HTMLDivElement;
	lastTree: TreeView | null = null;
	private readonly api: ApiClient;

	constructor(root: HTMLElement, api: ApiClient) {
		this.root = root;
		this.api = api;
		root.classList.add("tree-explorer");
		this.errorBanner = document.createElement("div");
		this.errorBanner.className = "tree-error";
		this.errorBanner.hidden = true;
		this.rows = document.createElement("div");
		this.rows.className = "tree-rows";
		this.fragmentPanel = document.createElement("ol");
		this.fragmentPanel.className = "tree-fragment";
		root.append(this.errorBanner, this.rows, this.fragmentPanel);
	}

	async load(
		variant: VariantSpec,
		pinned: string,
		pinnedPlayer: "bob" | "alice",
		depth: number,
		b0?: { lo: string; hi: string },
	): Promise<TreeView | null> {
		this.errorBanner.hidden = true;
		if (depth > MAX_EXPLORER_DEPTH) {
			this.showError(`depth-exceeded: explorer depth is capped at ${MAX_EXPLORER_DEPTH}`);
			return null;
		}
		try {
			const tree = await this.api.buildTree({
				variant,
				pinned,
				pinned_player: pinnedPlayer,
				depth,
				b0_lo: b0?.lo,
				b0_hi: b0?.hi,
				include_fragments: true,
			});
			this.lastTree = tree;
			this.render(tree);
			return tree;
		} catch (error) {
			if (error instanceof ServiceError) {
				this.showError(`${error.code}: ${error.detail}`);
				return null;
			}
			throw error;
		}
	}

	private showError(message: string): void {
		this.errorBanner.hidden = false;
		this.errorBanner.textContent = message;
	}

	private render(tree: TreeView): void {
		this.rows.textContent = "";
		this.fragmentPanel.textContent = "";
		const rootNode = tree.tree.nodes[""];
		const rootLo = toNumber(ratFromString(rootNode.lo));
		const rootHi = toNumber(ratFromString(rootNode.hi));
		const span = rootHi - rootLo || 1;

		for (let level = 0; level <= tree.tree.depth; level++) {
			const row = document.createElement("div");
			row.className = "tree-row";
			row.dataset.level = String(level);
			for (const [word, node] of Object.entries(tree.tree.nodes)) {
				if (word.length !== level) continue;
				const bar = document.createElement("div");
				bar.className = "tree-node";
				bar.dataset.word = word;
				const lo = toNumber(ratFromString(node.lo));
				const hi = toNumber(ratFromString(node.hi));
				bar.style.left = `${((lo - rootLo) / span) * 100}%`;
				bar.style.width = `${Math.max(((hi - lo) / span) * 100, 0.15)}%`;
				bar.title = `${word || "root"}: [${node.lo}, ${node.hi}] (${node.rounds} rounds)`;
				bar.addEventListener("click", () => this.showFragment(word));
				row.append(bar);
			}
			this.rows.append(row);
		}
	}

	showFragment(word: string): MoveWire[] {
		const fragments = this.lastTree?.fragments;
		const moves = fragments?.[word] ?? [];
		this.fragmentPanel.textContent = "";
		const header = document.createElement("li");
		header.className = "fragment-header";
		header.textContent = `fragment for "${word || "root"}" (${moves.length} moves)`;
		this.fragmentPanel.append(header);
		for (const move of moves) {
			const item = document.createElement("li");
			item.textContent = `${move.player}: [${move.lo}, ${move.hi}]`;
			this.fragmentPanel.append(item);
		}
		return moves;
	}
}
