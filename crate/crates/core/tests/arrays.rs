use mespin::cam_array::{CamArray, CamParams};
use mespin::device::{Fidelity, MeMtjDevice, MeXnorDevice};
use mespin::io::{read_records, to_csv_string, SwitchProbRow, TrajectoryRow};
use mespin::memory_array::{ArrayParams, DualPortArray};
use mespin::Error;
use proptest::prelude::*;

#[derive(Clone, Debug)]
enum Op {
    Write(usize, Vec<bool>),
    Read(usize),
    Dual(usize, Vec<bool>, usize),
}

fn op(rows: usize, cols: usize) -> impl Strategy<Value = Op> {
    prop_oneof![
        (0..rows, prop::collection::vec(any::<bool>(), cols)).prop_map(|(r, d)| Op::Write(r, d)),
        (0..rows).prop_map(Op::Read),
        (0..rows, prop::collection::vec(any::<bool>(), cols), 0..rows)
            .prop_map(|(w, d, r)| Op::Dual(w, d, r)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dual_port_array_behaves_like_a_plain_memory(ops in prop::collection::vec(op(4, 5), 1..40)) {
        let mut array = DualPortArray::new(4, 5, MeMtjDevice::calibrated().unwrap(), ArrayParams::default()).unwrap();
        let mut model = vec![vec![false; 5]; 4];
        for op in ops {
            match op {
                Op::Write(r, d) => {
                    array.write_row(r, &d).unwrap();
                    model[r] = d;
                }
                Op::Read(r) => prop_assert_eq!(&array.read_row(r).unwrap().data, &model[r]),
                Op::Dual(w, d, r) if w == r => {
                    prop_assert!(matches!(array.simultaneous_access(w, &d, r), Err(Error::PortConflict(_))));
                }
                Op::Dual(w, d, r) => {
                    let (write, read) = array.simultaneous_access(w, &d, r).unwrap();
                    prop_assert_eq!(&read.data, &model[r]);
                    prop_assert_eq!(read.latency, write.latency);
                    model[w] = d;
                }
            }
        }
        let stored: Vec<Vec<bool>> = array.stored().into_iter().map(Option::unwrap).collect();
        prop_assert_eq!(stored, model);
    }

    #[test]
    fn cam_matches_brute_force(
        words in prop::collection::vec(prop::collection::vec(any::<bool>(), 6), 1..6),
        key in prop::collection::vec(any::<bool>(), 6),
        reuse in any::<bool>(),
    ) {
        let mut cam = CamArray::new(words.len(), 6, MeXnorDevice::calibrated().unwrap(), CamParams::default()).unwrap();
        for (r, w) in words.iter().enumerate() {
            prop_assert!(cam.store_word(r, w).unwrap() > 0.0);
        }
        let key = if reuse { words[0].clone() } else { key };
        let result = cam.search(&key).unwrap();
        for (r, w) in words.iter().enumerate() {
            prop_assert_eq!(result.matchline_low[r], *w == key);
            for (c, (s, k)) in w.iter().zip(&key).enumerate() {
                prop_assert_eq!(result.per_cell_inverter[r][c], s == k);
            }
        }
        prop_assert!(result.energy.read_energy_per_bit() > 0.0);
    }

    #[test]
    fn csv_rows_round_trip_bit_exactly(
        rows in prop::collection::vec((any::<f64>(), -1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64), 0..20),
        p in 0.0..=1.0f64,
        n in 1u64..100_000,
    ) {
        let traj: Vec<TrajectoryRow> = rows
            .iter()
            .filter(|r| r.0.is_finite())
            .map(|&(t_s, mx, my, mz)| TrajectoryRow { t_s, mx, my, mz })
            .collect();
        let back: Vec<TrajectoryRow> = read_records(to_csv_string(&traj).unwrap().as_bytes()).unwrap();
        prop_assert_eq!(back, traj);
        let sp = vec![SwitchProbRow { v_volts: 0.1 * p, alpha_me_over_c: 0.25, p_switch: p, ci_low: p * 0.5, ci_high: p, n_trials: n }];
        let back: Vec<SwitchProbRow> = read_records(to_csv_string(&sp).unwrap().as_bytes()).unwrap();
        prop_assert_eq!(back, sp);
    }
}

#[test]
fn stochastic_array_round_trips_data() {
    let params = ArrayParams {
        fidelity: Fidelity::Stochastic,
        ..ArrayParams::default()
    };
    let mut array = DualPortArray::new(2, 4, MeMtjDevice::calibrated().unwrap(), params).unwrap();
    let data = [[true, false, true, true], [false, true, true, false]];
    for (r, d) in data.iter().enumerate() {
        array.write_row(r, d).unwrap();
    }
    for (r, d) in data.iter().enumerate() {
        assert_eq!(array.read_row(r).unwrap().data, d);
    }
    let (_, read) = array.simultaneous_access(0, &[false; 4], 1).unwrap();
    assert_eq!(read.data, data[1]);
    assert_eq!(array.read_row(0).unwrap().data, [false; 4]);
}

#[test]
fn dual_port_doubles_throughput() {
    let array = DualPortArray::new(
        2,
        2,
        MeMtjDevice::calibrated().unwrap(),
        ArrayParams::default(),
    )
    .unwrap();
    assert_eq!(
        array.dual_port_throughput(),
        2.0 * array.single_port_throughput()
    );
    assert!(array.sense_margin() > 0.0);
}
