/** Typed client for the session service. All numbers travel as "p/q" strings. */

export interface VariantSpec {
	kind: "schmidt" | "banach-mazur" | "mcmullen";
	alpha?: string;
	beta?: string;
	shrink?: string;
}

export interface TargetSpec {
	kind: "co-singleton" | "dense-enumeration" | "predicate-oracle";
	point?: string;
	enumeration?: string;
}

export interface MoveWire {
	player: "bob" | "alice";
	lo: string;
	hi: string;
}

export interface ViolationWire {
	code: string;
	detail: string;
}

export interface SessionView {
	schema_version: number;
	session_id: string;
	variant: string;
	parameters: Record<string, string>;
	human_side: string | null;
	engine_strategies: Record<string, string>;
	horizon: number;
	status: "awaiting-human" | "awaiting-engine" | "finished";
	to_move: string;
	moves: MoveWire[];
	bracket: { lo: string; hi: string } | null;
	verdict: string | null;
	certificate: { kind: string; point?: string; partial_sum?: string; threshold?: string } | null;
	violation: ViolationWire | null;
	target: Record<string, string> | null;
}

export interface HintRegion {
	lo: string;
	hi: string;
	min_left_endpoint: string;
	max_left_endpoint: string;
}

export interface HintView {
	schema_version: number;
	session_id: string;
	to_move: string;
	opening: boolean;
	host: { lo: string; hi: string } | null;
	required_length: string | null;
	max_length: string | null;
	regions: HintRegion[];
}

export interface ClassifyView {
	schema_version: number;
	alpha: string;
	beta: string;
	regime: string;
	margins: Record<string, string>;
}

export interface ChainView {
	schema_version: number;
	alpha: string;
	beta: string;
	steps: { step: string; lhs: string; relation: string; rhs: string; margin: string }[];
	conclusion_margin: string;
}

export interface TreeView {
	schema_version: number;
	tree: {
		variant: string;
		parameters: Record<string, string>;
		pinned: string;
		depth: number;
		nodes: Record<string, { lo: string; hi: string; rounds: number }>;
	};
	levels: { level: number; count: number; max_diameter: string; total_length: string }[];
	fragments?: Record<string, MoveWire[]>;
}

export interface CreateSessionRequest {
	variant: VariantSpec;
	human_side: "bob" | "alice" | "none";
	horizon: number;
	engine_strategy?: string;
	bob_strategy?: string;
	alice_strategy?: string;
	target?: TargetSpec;
	b0_lo?: string;
	b0_hi?: string;
}

export interface ErrorEnvelope {
	schema_version: number;
	error: { code: string; detail: string };
}

export class ServiceError extends Error {
	constructor(
		readonly code: string,
		readonly detail: string,
		readonly status: number,
	) {
		super(`${code}: ${detail}`);
	}
}

export class ApiClient {
	constructor(readonly baseUrl: string) {}

	private async post<T>(path: string, body: unknown): Promise<T> {
		const response = await fetch(`${this.baseUrl}${path}`, {
			method: "POST",
			headers: { "content-type": "application/json" },
			body: JSON.stringify(body ?? {}),
		});
		const payload = await response.json();
		if (!response.ok) {
			const envelope = payload as ErrorEnvelope;
			const error = envelope.error ?? { code: "http-error", detail: response.statusText };
			throw new ServiceError(error.code, error.detail, response.status);
		}
		return payload as T;
	}

	health(): Promise<{ schema_version: number; service: string; strategies: string[] }> {
		return fetch(`${this.baseUrl}/`).then((r) => r.json());
	}

	createSession(request: CreateSessionRequest): Promise<SessionView> {
		return this.post("/create-session", request);
	}

	getSession(sessionId: string): Promise<SessionView> {
		return this.post("/get-session", { session_id: sessionId });
	}

	submitMove(sessionId: string, lo: string, hi: string): Promise<SessionView> {
		return this.post("/submit-move", { session_id: sessionId, lo, hi });
	}

	hint(sessionId: string): Promise<HintView> {
		return this.post("/hint", { session_id: sessionId });
	}

	classify(alpha: string, beta: string): Promise<ClassifyView> {
		return this.post("/classify", { alpha, beta });
	}

	verifyChain(alpha: string, beta: string): Promise<ChainView> {
		return this.post("/verify-chain", { alpha, beta });
	}

	buildTree(request: {
		variant: VariantSpec;
		pinned: string;
		pinned_player: string;
		depth: number;
		b0_lo?: string;
		b0_hi?: string;
		include_fragments?: boolean;
	}): Promise<TreeView> {
		return this.post("/build-tree", request);
	}

	listTranscripts(): Promise<{ schema_version: number; transcript_ids: string[] }> {
		return this.post("/list-transcripts", {});
	}
}
