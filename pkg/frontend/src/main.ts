// Browser entry point: connect to the simulator's console endpoint, paint
// state frames, and let the operator flip the robot's mode. The console
// never mutates simulation state except by sending setMode messages.

import { ModeName, encodeSetMode, parseStateMessage } from "./protocol.js"
import { Painter, buildGridModel, renderState } from "./render.js"

const canvas = document.getElementById("world") as HTMLCanvasElement
const statusBar = document.getElementById("status") as HTMLElement
const banner = document.getElementById("banner") as HTMLElement
const lightDot = document.getElementById("light") as HTMLElement
const tickLabel = document.getElementById("tick") as HTMLElement
const picturesLabel = document.getElementById("pictures") as HTMLElement
const modeButtons: Record<ModeName, HTMLButtonElement> = {
    RANDOM: document.getElementById("mode-random") as HTMLButtonElement,
    EXPLORATION: document.getElementById("mode-exploration") as HTMLButtonElement,
}

let socket: WebSocket | null = null
let connected = false

function setConnected(up: boolean): void {
    connected = up
    banner.style.display = up ? "none" : "block"
    for (const button of Object.values(modeButtons)) {
        button.disabled = !up
    }
    statusBar.textContent = up ? "connected" : "disconnected"
}

function showMode(mode: ModeName): void {
    for (const [name, button] of Object.entries(modeButtons)) {
        button.classList.toggle("active", name === mode)
    }
}

function sendSetMode(mode: ModeName): void {
    // Not queued while disconnected: the banner is the feedback.
    if (!connected || socket === null || socket.readyState !== WebSocket.OPEN) {
        setConnected(false)
        return
    }
    socket.send(encodeSetMode(mode))
}

function paint(raw: string): void {
    let decoded: unknown
    try {
        decoded = JSON.parse(raw)
    } catch {
        console.warn("console: dropping non-JSON frame")
        return
    }
    const msg = parseStateMessage(decoded)
    if (msg === null) {
        console.warn("console: dropping malformed frame", decoded)
        return
    }
    const grid = buildGridModel(msg)
    if (grid === null) {
        console.warn("console: dropping frame with a broken grid")
        return
    }
    const scale = Math.max(1, Math.floor(Math.min(
        canvas.width / grid.cols, canvas.height / grid.rows)))
    const ctx = canvas.getContext("2d")
    if (ctx === null) {
        return
    }
    ctx.clearRect(0, 0, canvas.width, canvas.height)
    // The renderer only ever assigns string colors to fillStyle.
    renderState(ctx as unknown as Painter, msg, grid, scale)
    showMode(msg.mode)
    lightDot.classList.toggle("on", msg.lightOn)
    tickLabel.textContent = String(msg.tick)
    picturesLabel.textContent = String(msg.pictures)
}

function connect(): void {
    socket = new WebSocket(`ws://${window.location.host}/ws`)
    socket.onopen = () => setConnected(true)
    socket.onmessage = (event) => paint(String(event.data))
    socket.onclose = () => {
        setConnected(false)
        setTimeout(connect, 2000)
    }
    socket.onerror = () => {
        socket?.close()
    }
}

modeButtons.RANDOM.addEventListener("click", () => sendSetMode("RANDOM"))
modeButtons.EXPLORATION.addEventListener(
    "click", () => sendSetMode("EXPLORATION"))
setConnected(false)
connect()
