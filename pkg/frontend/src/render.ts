// Canvas rendering for state frames. The grid model is separated from the
// actual painting so the decode/layout logic is testable without a DOM;
// painting goes through the minimal Painter surface below.

import { StateMessage, decodeRleRow } from "./protocol.js"

export interface GridModel {
    rows: number
    cols: number
    cells: string[]  // decoded rows, row 0 = bottom of the world
}

export const CELL_COLORS: Record<string, string> = {
    U: "#9a9a9a",   // unknown: gray
    F: "#ffffff",   // known free: white
    O: "#1c1c1c",   // known occupied: black
}
export const FRONTIER_COLOR = "#3da5ff"
export const ROBOT_COLOR = "#d32f2f"

/** Decode every row and require a rectangular grid; null when broken. */
export function buildGridModel(msg: StateMessage): GridModel | null {
    const cells: string[] = []
    let cols = -1
    for (const row of msg.known) {
        const decoded = decodeRleRow(row)
        if (decoded === null) {
            return null
        }
        if (cols === -1) {
            cols = decoded.length
        } else if (decoded.length !== cols) {
            return null
        }
        cells.push(decoded)
    }
    if (cells.length === 0 || cols <= 0) {
        return null
    }
    return { rows: cells.length, cols, cells }
}

// The subset of CanvasRenderingContext2D the renderer touches; tests
// substitute a recording stub.
export interface Painter {
    fillStyle: string
    fillRect(x: number, y: number, w: number, h: number): void
    beginPath(): void
    moveTo(x: number, y: number): void
    lineTo(x: number, y: number): void
    closePath(): void
    fill(): void
}

export interface RenderStats {
    cellRuns: number
    frontierCells: number
    robotDrawn: boolean
}

const CELL_M = 0.1  // grid resolution in meters, fixed by the simulator

/**
 * Paint one frame: grid as horizontal runs, frontier highlights, then the
 * robot as a heading triangle. World row 0 is the bottom, so canvas y is
 * flipped. Returns what was painted, which the tests assert on.
 */
export function renderState(painter: Painter, msg: StateMessage,
                            grid: GridModel, scale: number): RenderStats {
    const stats: RenderStats = { cellRuns: 0, frontierCells: 0,
                                 robotDrawn: false }
    for (let r = 0; r < grid.rows; r++) {
        const row = grid.cells[r]
        const y = (grid.rows - 1 - r) * scale
        let start = 0
        while (start < grid.cols) {
            let end = start + 1
            while (end < grid.cols && row[end] === row[start]) {
                end++
            }
            painter.fillStyle = CELL_COLORS[row[start]]
            painter.fillRect(start * scale, y, (end - start) * scale, scale)
            stats.cellRuns++
            start = end
        }
    }
    painter.fillStyle = FRONTIER_COLOR
    for (const [r, c] of msg.frontiers) {
        if (r < 0 || r >= grid.rows || c < 0 || c >= grid.cols) {
            continue
        }
        painter.fillRect(c * scale, (grid.rows - 1 - r) * scale, scale, scale)
        stats.frontierCells++
    }
    const px = (msg.pose.x / CELL_M) * scale
    const py = (grid.rows - msg.pose.y / CELL_M) * scale
    const size = Math.max(scale * 1.5, 6)
    const heading = -msg.pose.theta  // canvas y points down
    painter.fillStyle = ROBOT_COLOR
    painter.beginPath()
    painter.moveTo(px + size * Math.cos(heading),
                   py + size * Math.sin(heading))
    painter.lineTo(px + size * 0.6 * Math.cos(heading + 2.5),
                   py + size * 0.6 * Math.sin(heading + 2.5))
    painter.lineTo(px + size * 0.6 * Math.cos(heading - 2.5),
                   py + size * 0.6 * Math.sin(heading - 2.5))
    painter.closePath()
    painter.fill()
    stats.robotDrawn = true
    return stats
}
