use super::{Face, FaceletCube};

/// Unfolded-cross net: U on top, then L F R B, then D, one letter per
/// facelet. Always nine lines joined by `\n` with no trailing newline.
pub fn render_cube_net(c: &FaceletCube) -> String {
    let row = |face: Face, r: usize| -> String {
        c.face(face)[r * 3..r * 3 + 3]
            .iter()
            .map(|f| f.letter())
            .collect()
    };
    let mut lines = Vec::with_capacity(9);
    for r in 0..3 {
        lines.push(format!("    {}", row(Face::U, r)));
    }
    for r in 0..3 {
        let band: Vec<String> = [Face::L, Face::F, Face::R, Face::B]
            .iter()
            .map(|&f| row(f, r))
            .collect();
        lines.push(band.join(" "));
    }
    for r in 0..3 {
        lines.push(format!("    {}", row(Face::D, r)));
    }
    lines.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::{random_scramble, Formula, Move, Turn};
    use std::collections::HashSet;

    #[test]
    fn solved_net() {
        let net = render_cube_net(&FaceletCube::solved());
        let lines: Vec<&str> = net.lines().collect();
        assert_eq!(lines.len(), 9);
        assert_eq!(lines[0], "    UUU");
        for line in &lines[3..6] {
            assert_eq!(*line, "LLL FFF RRR BBB");
        }
        assert_eq!(lines[8], "    DDD");
    }

    #[test]
    fn net_shows_turned_row() {
        let c = FaceletCube::solved().apply_move(Move::new(Face::U, Turn::Cw90));
        let net = render_cube_net(&c);
        assert_eq!(net.lines().nth(3).unwrap(), "FFF RRR BBB LLL");
    }

    #[test]
    fn render_is_injective_on_samples() {
        let mut seen_states = HashSet::new();
        let mut seen_text = HashSet::new();
        for seed in 0..1000u64 {
            let len = (seed % 5) as usize + 1;
            let mut f: Formula = random_scramble(seed, len).unwrap();
            // Push some samples deeper so they are not all near solved.
            for m in random_scramble(seed + 7_000, 5).unwrap().moves() {
                f.push(*m);
            }
            let c = FaceletCube::solved().apply_formula(&f);
            if seen_states.insert(c) {
                assert!(seen_text.insert(render_cube_net(&c)));
            }
        }
        assert_eq!(seen_states.len(), seen_text.len());
    }
}
