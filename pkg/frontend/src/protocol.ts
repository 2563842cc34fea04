// Wire protocol shared with the simulator's console endpoint (/ws).
// State frames arrive as JSON text; the known grid is run-length encoded
// per row as <count><letter> segments with U (unknown), F (known free)
// and O (known occupied).

export interface Pose {
    x: number
    y: number
    theta: number
}

export type ModeName = "RANDOM" | "EXPLORATION"

export interface StateMessage {
    type: "state"
    tick: number
    pose: Pose
    mode: ModeName
    lightOn: boolean
    known: string[]
    frontiers: [number, number][]
    pictures: number
}

export interface SetModeMessage {
    type: "setMode"
    mode: ModeName
}

const RLE_SEGMENT = /(\d+)([UFO])/g

/** Decode one "3U2F1O" row into "UUUFFO"; null if the row is malformed. */
export function decodeRleRow(row: string): string | null {
    let out = ""
    let consumed = 0
    for (const match of row.matchAll(RLE_SEGMENT)) {
        if (match.index !== consumed) {
            return null
        }
        out += match[2].repeat(parseInt(match[1], 10))
        consumed = match.index + match[0].length
    }
    return consumed === row.length && row.length > 0 ? out : null
}

function isPose(value: unknown): value is Pose {
    if (typeof value !== "object" || value === null) {
        return false
    }
    const pose = value as Record<string, unknown>
    return ["x", "y", "theta"].every((k) => typeof pose[k] === "number")
}

function isCellList(value: unknown): value is [number, number][] {
    return Array.isArray(value) && value.every(
        (cell) => Array.isArray(cell) && cell.length === 2
            && typeof cell[0] === "number" && typeof cell[1] === "number")
}

/** Validate a decoded JSON value as a StateMessage; null when malformed. */
export function parseStateMessage(raw: unknown): StateMessage | null {
    if (typeof raw !== "object" || raw === null) {
        return null
    }
    const msg = raw as Record<string, unknown>
    if (msg.type !== "state"
        || typeof msg.tick !== "number"
        || !isPose(msg.pose)
        || (msg.mode !== "RANDOM" && msg.mode !== "EXPLORATION")
        || typeof msg.lightOn !== "boolean"
        || !Array.isArray(msg.known)
        || !msg.known.every((row) => typeof row === "string")
        || !isCellList(msg.frontiers)
        || typeof msg.pictures !== "number") {
        return null
    }
    return msg as unknown as StateMessage
}

export function encodeSetMode(mode: ModeName): string {
    const message: SetModeMessage = { type: "setMode", mode }
    return JSON.stringify(message)
}
