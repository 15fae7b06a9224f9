use std::fs;

use gafdiff::estimate::estimate_rows;
use gafdiff::image::{export_png, gray_level};
use gafdiff::manifest::{read_manifest, ManifestWriter, HEADER};
use gafdiff::npy::{read_f32, write_f32, F32Array, ShardWriter};
use gafdiff::predictions::{read_predictions, write_predictions};
use gafdiff_core::dataset::{encode_stored_row, generate_record, DatasetSpec, Task};
use gafdiff_core::gaf::GafKind;
use gafdiff_core::metrics::{AlphaPrediction, ClassPrediction, PredictionSet};

#[test]
fn npy_header_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.npy");
    let data: Vec<f32> = (0..12).map(|v| v as f32 * 0.5 - 1.0).collect();
    write_f32(&path, &[3, 4], &data).unwrap();
    let bytes = fs::read(&path).unwrap();
    assert_eq!(&bytes[..8], b"\x93NUMPY\x01\x00");
    let header_len = u16::from_le_bytes([bytes[8], bytes[9]]) as usize;
    assert_eq!((10 + header_len) % 16, 0);
    let header = std::str::from_utf8(&bytes[10..10 + header_len]).unwrap();
    assert!(header.contains("'descr': '<f4'") && header.contains("'fortran_order': False"));
    let compact: String = header.chars().filter(|c| !c.is_whitespace()).collect();
    assert!(compact.contains("'shape':(3,4)") || compact.contains("'shape':(3,4,)"));
    assert!(header.ends_with('\n'));
    assert_eq!(bytes.len(), 10 + header_len + 12 * 4);
    assert_eq!(&bytes[10 + header_len..10 + header_len + 4], &(-1.0f32).to_le_bytes());
    let back = read_f32(&path).unwrap();
    assert_eq!(back, F32Array { shape: vec![3, 4], data });
    assert_eq!(back.row(1), &[1.0, 1.5, 2.0, 2.5]);
}

#[test]
fn npy_rejects_short_writes_and_corrupt_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("short.npy");
    let mut w = ShardWriter::create(&path, &[2, 2]).unwrap();
    w.append(&[1.0, 2.0, 3.0]).unwrap();
    assert!(w.finish().is_err());

    let bad = dir.path().join("bad.npy");
    fs::write(&bad, b"\x93NUMPX\x01\x00garbage").unwrap();
    assert_eq!(read_f32(&bad).unwrap_err().exit_code(), 3);

    let good = dir.path().join("good.npy");
    write_f32(&good, &[2, 2], &[0.0; 4]).unwrap();
    let mut bytes = fs::read(&good).unwrap();
    bytes.truncate(bytes.len() - 3);
    fs::write(&good, bytes).unwrap();
    assert_eq!(read_f32(&good).unwrap_err().exit_code(), 3);
    assert_eq!(read_f32(&dir.path().join("missing.npy")).unwrap_err().exit_code(), 3);
}

#[test]
fn manifest_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("manifest.csv");
    let mut spec = DatasetSpec::new(Task::Regression, 40, 5);
    spec.split_fractions.validation = 0.5;
    spec.split_fractions.train = 0.5;
    let records: Vec<_> = (0..40).map(|i| generate_record(&spec, i).unwrap().record).collect();
    let mut w = ManifestWriter::create(&path).unwrap();
    for r in &records {
        w.write(r).unwrap();
    }
    w.finish().unwrap();
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().next().unwrap(), HEADER.join(","));
    assert!(!text.contains('\r'));
    assert_eq!(read_manifest(&path).unwrap(), records);

    fs::write(&path, text.replacen(",FBM,2,", ",FBM,3,", 1)).unwrap();
    if text.contains(",FBM,2,") {
        assert!(read_manifest(&path).is_err());
    }
    fs::write(&path, "id,model\n0,FBM\n").unwrap();
    assert_eq!(read_manifest(&path).unwrap_err().exit_code(), 3);
}

#[test]
fn stored_rows_reencode_to_stored_images() {
    let spec = DatasetSpec::new(Task::Classification, 50, 9);
    for i in 0..50 {
        let g = generate_record(&spec, i).unwrap();
        assert_eq!(g.raw.len(), 50);
        let pad = 50 - g.record.raw_length;
        assert!(g.raw[..pad].iter().all(|v| v.to_bits() == 0));
        assert_eq!(encode_stored_row(&g.raw, GafKind::Gasf).unwrap(), g.gasf.unwrap());
        assert_eq!(encode_stored_row(&g.raw, GafKind::Gadf).unwrap(), g.gadf.unwrap());
    }
}

#[test]
fn prediction_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.csv");
    let cls = PredictionSet::Classification(vec![
        ClassPrediction { id: 0, code: 2, scores: Some([0.1, 0.1, 0.6, 0.1, 0.1]) },
        ClassPrediction { id: 3, code: 4, scores: Some([0.0, 0.0, 0.0, 0.25, 0.75]) },
    ]);
    write_predictions(&path, &cls).unwrap();
    assert_eq!(read_predictions(&path, Task::Classification).unwrap(), cls);
    assert_eq!(read_predictions(&path, Task::Regression).unwrap_err().exit_code(), 2);

    let reg = PredictionSet::Regression(vec![AlphaPrediction { id: 7, alpha: 1.25 }]);
    write_predictions(&path, &reg).unwrap();
    assert_eq!(read_predictions(&path, Task::Regression).unwrap(), reg);

    for bad in [
        "id,pred_code,score_0\n0,1,0.5\n",
        "id,pred_code\nx,1\n",
        "id,pred_code\n0\n",
        "id,pred_code,score_0,score_1,score_2,score_3,score_4\n0,1,0.2,0.2,0.2,0.2,nope\n",
    ] {
        fs::write(&path, bad).unwrap();
        let err = read_predictions(&path, Task::Classification).unwrap_err();
        assert_eq!(err.exit_code(), 2, "{bad}");
    }
    fs::write(&path, "id,pred_code\n0,1\n1,3\n").unwrap();
    let PredictionSet::Classification(rows) = read_predictions(&path, Task::Classification).unwrap() else {
        panic!()
    };
    assert!(rows.iter().all(|r| r.scores.is_none()));
}

fn decode_png(path: &std::path::Path) -> (u32, u32, Vec<u8>) {
    let dec = png::Decoder::new(std::io::BufReader::new(fs::File::open(path).unwrap()));
    let mut reader = dec.read_info().unwrap();
    let mut buf = vec![0; reader.output_buffer_size().unwrap()];
    let info = reader.next_frame(&mut buf).unwrap();
    assert_eq!(info.color_type, png::ColorType::Grayscale);
    buf.truncate(info.buffer_size());
    (info.width, info.height, buf)
}

#[test]
fn constant_gadf_exports_mid_gray() {
    let dir = tempfile::tempdir().unwrap();
    let img = encode_stored_row(&[0.7f32; 50], GafKind::Gadf).unwrap();
    let arr = F32Array { shape: vec![1, 50, 50], data: img };
    let files = export_png(&arr, &[0], dir.path()).unwrap();
    let (w, h, pixels) = decode_png(&files[0]);
    assert_eq!((w, h), (50, 50));
    assert!(pixels.iter().all(|&p| p == 128));
    assert_eq!(gray_level(0.0), 128);
}

#[test]
fn png_export_checks_shape_and_ids() {
    let dir = tempfile::tempdir().unwrap();
    let arr = F32Array { shape: vec![2, 3, 3], data: vec![-1.0; 18] };
    assert_eq!(export_png(&arr, &[2], dir.path()).unwrap_err().exit_code(), 2);
    let flat = F32Array { shape: vec![2, 9], data: vec![0.0; 18] };
    assert_eq!(export_png(&flat, &[0], dir.path()).unwrap_err().exit_code(), 2);
    let files = export_png(&arr, &[1], dir.path()).unwrap();
    let (w, h, pixels) = decode_png(&files[0]);
    assert_eq!((w, h), (3, 3));
    assert!(pixels.iter().all(|&p| p == 0));
}

#[test]
fn estimates_ballistic_and_immobile_rows() {
    let mut data: Vec<f32> = (0..50).map(|t| t as f32).collect();
    data.extend([3.0f32; 50]);
    let arr = F32Array { shape: vec![2, 50], data };
    let rows = estimate_rows(&arr, None).unwrap();
    assert!((rows[0].alpha_hat - 2.0).abs() < 0.01);
    assert!(!rows[0].degenerate);
    assert!(rows[1].degenerate && rows[1].alpha_hat.is_nan());
    assert_eq!(rows[1].id, 1);
}
