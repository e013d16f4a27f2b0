#![no_main]

use libfuzzer_sys::fuzz_target;

use chanprob::Mask;
use chanprob_cli::ingest::DataTable;

fuzz_target!(|data: &[u8]| {
    let Ok(table) = DataTable::read(data) else {
        return;
    };
    // any ingested table must yield a causal joint state whose first
    // marginal matches the empirical column frequencies
    let Ok(state) = table.joint_state() else {
        return;
    };
    assert!(state.is_causal());
    let wires = state.space().wires();
    if wires > 1 {
        let mask = Mask::from_indices(wires, &[0]);
        let marginal = state.marginal(&mask).unwrap();
        assert!((marginal.mass() - 1.0).abs() <= 1e-9);
    }
});
