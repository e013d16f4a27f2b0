#![no_main]

use std::sync::OnceLock;

use libfuzzer_sys::fuzz_target;

use chanprob_cli::ingest::DataTable;
use chanprob_cli::model::{self, NaiveBayesModel};

const TABLE: &str = "\
Outlook,Temperature,Humidity,Windy,Play
Sunny,hot,high,false,no
Sunny,hot,high,true,no
Overcast,hot,high,false,yes
Rainy,mild,high,false,yes
Rainy,cool,normal,false,yes
Rainy,cool,normal,true,no
Overcast,cool,normal,true,yes
Sunny,mild,high,false,no
Sunny,cool,normal,false,yes
Rainy,mild,normal,false,yes
Sunny,mild,normal,true,yes
Overcast,mild,high,true,yes
Overcast,hot,normal,false,yes
Rainy,mild,high,true,no
";

fn fitted() -> &'static NaiveBayesModel {
    static MODEL: OnceLock<NaiveBayesModel> = OnceLock::new();
    MODEL.get_or_init(|| {
        let table = DataTable::read(TABLE.as_bytes()).expect("fixed table ingests");
        model::fit(&table, "Play", false, &[]).expect("fixed table fits")
    })
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let model = fitted();
    if let Ok(observation) = model.parse_observation(text) {
        if let Ok(posterior) = model.classify(&observation) {
            assert!(posterior.is_causal());
        }
    }
});
