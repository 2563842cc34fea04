import assert from "node:assert/strict"
import { test } from "node:test"

import { StateMessage, parseStateMessage } from "./protocol.js"
import { CELL_COLORS, FRONTIER_COLOR, Painter, ROBOT_COLOR, buildGridModel,
         renderState } from "./render.js"

function state(overrides: Partial<StateMessage> = {}): StateMessage {
    const base = parseStateMessage({
        type: "state",
        tick: 7,
        pose: { x: 0.15, y: 0.15, theta: 0.5 },
        mode: "EXPLORATION",
        lightOn: true,
        known: ["3O", "1O1F1O", "3O"],
        frontiers: [[1, 1]],
        pictures: 0,
    })
    assert.ok(base)
    return { ...base, ...overrides }
}

class RecordingPainter implements Painter {
    fillStyle = ""
    rects: Array<{ x: number; y: number; w: number; h: number; style: string }> = []
    paths = 0
    filledPaths = 0

    fillRect(x: number, y: number, w: number, h: number): void {
        this.rects.push({ x, y, w, h, style: this.fillStyle })
    }
    beginPath(): void { this.paths++ }
    moveTo(): void {}
    lineTo(): void {}
    closePath(): void {}
    fill(): void { this.filledPaths++ }
}

test("grid model decodes a rectangular grid", () => {
    const grid = buildGridModel(state())
    assert.ok(grid)
    assert.equal(grid.rows, 3)
    assert.equal(grid.cols, 3)
    assert.deepEqual(grid.cells, ["OOO", "OFO", "OOO"])
})

test("grid model rejects ragged or broken grids", () => {
    assert.equal(buildGridModel(state({ known: ["3U", "2F"] })), null)
    assert.equal(buildGridModel(state({ known: ["nonsense"] })), null)
    assert.equal(buildGridModel(state({ known: [] })), null)
})

test("rendering paints runs, frontier overlay and the robot", () => {
    const msg = state()
    const grid = buildGridModel(msg)
    assert.ok(grid)
    const painter = new RecordingPainter()
    const stats = renderState(painter, msg, grid, 10)
    // rows OOO / OFO / OOO give 1 + 3 + 1 runs
    assert.equal(stats.cellRuns, 5)
    assert.equal(stats.frontierCells, 1)
    assert.ok(stats.robotDrawn)
    assert.equal(painter.filledPaths, 1)

    const byStyle = new Map<string, number>()
    for (const rect of painter.rects) {
        byStyle.set(rect.style, (byStyle.get(rect.style) ?? 0) + 1)
    }
    assert.equal(byStyle.get(CELL_COLORS.O), 4)
    assert.equal(byStyle.get(CELL_COLORS.F), 1)
    assert.equal(byStyle.get(FRONTIER_COLOR), 1)

    // world row 0 paints at the bottom of the canvas
    const bottomRun = painter.rects[0]
    assert.equal(bottomRun.y, 2 * 10)
})

test("frontier cells outside the grid are skipped", () => {
    const msg = state({ frontiers: [[1, 1], [99, 99], [-1, 0]] })
    const grid = buildGridModel(msg)
    assert.ok(grid)
    const stats = renderState(new RecordingPainter(), msg, grid, 10)
    assert.equal(stats.frontierCells, 1)
})

test("unknown cells use the unknown color", () => {
    const msg = state({ known: ["2U", "2U"] })
    const grid = buildGridModel(msg)
    assert.ok(grid)
    const painter = new RecordingPainter()
    renderState(painter, msg, grid, 5)
    assert.ok(painter.rects.filter(r => r.style === CELL_COLORS.U).length >= 2)
})

test("robot marker color is distinct from the grid palette", () => {
    assert.ok(!Object.values(CELL_COLORS).includes(ROBOT_COLOR))
    assert.notEqual(ROBOT_COLOR, FRONTIER_COLOR)
})
