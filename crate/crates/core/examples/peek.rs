use dualgraph::*;
fn main() {
    for e in corpus::corpus() {
        let f = e.graph_file().unwrap();
        let d = match &f.marked { Some(c) => f.graph.without(&[c]), None => f.graph.clone() };
        for comp in d.connected_components() {
            let Ok(r) = is_rational(&comp) else { println!("{} skip", e.name); continue };
            let b = r.fundamental_cycle.iter().map(|(_, v)| v.to_integer()).max().unwrap();
            let b: u64 = b.try_into().unwrap();
            let t = std::time::Instant::now();
            let m = max_pa_bounded(&comp, b);
            println!("{} n={} bound={} rational={} -> {:?} {:?}", e.name, comp.len(), b, r.rational, m.as_ref().map(|m| (m.max.clone(), m.nodes)).map_err(|e| e.to_string()), t.elapsed());
        }
    }
}
