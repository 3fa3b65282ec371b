use super::FiniteGroup;

/// Extends an assignment of generator images to a map on all of `g`,
/// returning `None` if the assignment is not a well-defined injective
/// homomorphism.
fn extend(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let n = g.order();
    let mut map = vec![usize::MAX; n];
    map[0] = 0;
    let mut stack = vec![0usize];
    while let Some(x) = stack.pop() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let img = h.mul(map[x], t);
            if map[y] == usize::MAX {
                map[y] = img;
                stack.push(y);
            } else if map[y] != img {
                return None;
            }
        }
    }
    let mut hit = vec![false; n];
    for &v in &map {
        if v == usize::MAX || std::mem::replace(&mut hit[v], true) {
            return None;
        }
    }
    let hom = (0..n).all(|a| (0..n).all(|b| map[g.mul(a, b)] == h.mul(map[a], map[b])));
    hom.then_some(map)
}

/// An isomorphism `g → h` as a vector of images, found by backtracking over
/// images of a generating set with candidates restricted to elements of the
/// same order.
pub fn isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Option<Vec<usize>> {
    if g.order() != h.order() || g.order_profile() != h.order_profile() || g.is_abelian() != h.is_abelian() {
        return None;
    }
    let gens = g.generators();
    let h_orders: Vec<usize> = (0..h.order()).map(|x| h.element_order(x)).collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let o = g.element_order(s);
            (0..h.order()).filter(|&x| h_orders[x] == o).collect()
        })
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    fn rec(
        g: &FiniteGroup,
        h: &FiniteGroup,
        gens: &[usize],
        candidates: &[Vec<usize>],
        images: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        if images.len() == gens.len() {
            return extend(g, h, gens, images);
        }
        for &c in &candidates[images.len()] {
            if images.contains(&c) {
                continue;
            }
            images.push(c);
            if let Some(m) = rec(g, h, gens, candidates, images) {
                return Some(m);
            }
            images.pop();
        }
        None
    }
    rec(g, h, &gens, &candidates, &mut images)
}
