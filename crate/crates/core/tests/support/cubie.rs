//! Geometric 3x3x3 cubie model used to derive and check the facelet move tables.
//!
//! Every sticker is identified by the position of the cubie it sits on
//! (coordinates in {-1, 0, 1}^3, x to the right, y up, z towards the viewer)
//! and the outward normal of the face it shows. A face turn rotates every
//! sticker whose cubie lies in that layer by -90 degrees about the face normal
//! (clockwise when looking at the face from outside).

#![allow(dead_code)]

pub type Vec3 = [i32; 3];

/// Faces in URFDBL order with their outward normals.
pub const FACE_NORMALS: [Vec3; 6] = [
    [0, 1, 0],  // U
    [1, 0, 0],  // R
    [0, 0, 1],  // F
    [0, -1, 0], // D
    [0, 0, -1], // B
    [-1, 0, 0], // L
];

/// Position of the cubie carrying facelet `row`/`col` of `face`, following the
/// Kociemba layout: U seen from above with F at the bottom, D seen from below
/// with F at the top, the four side faces seen from outside with U on top.
pub fn sticker_position(face: usize, row: i32, col: i32) -> Vec3 {
    match face {
        0 => [col - 1, 1, row - 1],
        1 => [1, 1 - row, 1 - col],
        2 => [col - 1, 1 - row, 1],
        3 => [col - 1, -1, 1 - row],
        4 => [1 - col, 1 - row, -1],
        5 => [-1, 1 - row, col - 1],
        _ => unreachable!(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sticker {
    pub pos: Vec3,
    pub normal: Vec3,
}

pub fn stickers() -> Vec<Sticker> {
    let mut out = Vec::with_capacity(54);
    for (face, &normal) in FACE_NORMALS.iter().enumerate() {
        for idx in 0..9 {
            out.push(Sticker {
                pos: sticker_position(face, idx / 3, idx % 3),
                normal,
            });
        }
    }
    out
}

fn dot(a: Vec3, b: Vec3) -> i32 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Rodrigues rotation by -90 degrees about the unit axis `n`.
fn rotate_cw(n: Vec3, p: Vec3) -> Vec3 {
    let c = cross(n, p);
    let d = dot(n, p);
    [-c[0] + n[0] * d, -c[1] + n[1] * d, -c[2] + n[2] * d]
}

/// Facelet gather table for a clockwise quarter turn of `face`:
/// `new[i] = old[table[i]]`.
pub fn clockwise_table(face: usize) -> [u8; 54] {
    let all = stickers();
    let axis = FACE_NORMALS[face];
    let mut table = [0u8; 54];
    for (src, s) in all.iter().enumerate() {
        let moved = if dot(s.pos, axis) == 1 {
            Sticker {
                pos: rotate_cw(axis, s.pos),
                normal: rotate_cw(axis, s.normal),
            }
        } else {
            *s
        };
        let dest = all
            .iter()
            .position(|t| *t == moved)
            .expect("rotated sticker lands on a sticker slot");
        table[dest] = src as u8;
    }
    table
}

/// Apply a clockwise quarter turn of `face` to a 54-symbol state.
pub fn turn<T: Copy>(state: &[T; 54], face: usize) -> [T; 54] {
    let table = clockwise_table(face);
    let mut out = *state;
    for i in 0..54 {
        out[i] = state[table[i] as usize];
    }
    out
}
